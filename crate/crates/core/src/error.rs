use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("edge label {label} is used {count} times, expected 2")]
    EdgeMultiplicity { label: u32, count: usize },
    #[error("no consistent orientation for the strand through edge {label}")]
    Orientation { label: u32 },
    #[error("rotation data is not planar: {faces} faces where Euler's formula needs {expected}")]
    NonPlanar { faces: usize, expected: usize },
    #[error("gauss code: {0}")]
    Gauss(String),
    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("diagram has {crossings} crossings, limit is {limit}")]
    CrossingLimit { crossings: usize, limit: usize },
    #[error("negative power of a polynomial that is not a monomial")]
    NegativePower,
    #[error("substitution needs the inverse of a non-invertible polynomial")]
    NonInvertible,
    #[error("division is not exact")]
    NotExact,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
