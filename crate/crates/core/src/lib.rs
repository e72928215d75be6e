#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod diagram;
pub mod error;
pub mod homfly;
pub mod kauffman;
mod par;
pub mod poly;
pub mod surface;
pub mod theta;

pub use diagram::{parse_gauss, parse_pd, resolve, serialize_pd, writhe, LinkDiagram, ResolveMode, Sign};
pub use error::{Error, Result};
pub use poly::{LaurentPoly, Monomial, Var};

pub const DEFAULT_MAX_CROSSINGS: usize = 20;

/// Size limits for the exponential evaluators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_crossings: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_crossings: DEFAULT_MAX_CROSSINGS }
    }
}
