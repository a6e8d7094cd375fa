use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("incompatible inputs: {0}")]
    Incompatible(String),
    #[error("result leaves the window; cutoff {needed} required")]
    WindowEscape { needed: u32 },
    #[error("input is not triangular: {0}")]
    NonTriangular(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("coefficient not certified: {0}")]
    Uncertified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
