//! Corpus harness, file formats and the command-line front end over `thetaknot-core`.

pub mod app;
pub mod corpus;
pub mod harness;
pub mod render;
