use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at v0 = {0}")]
    PoleAtPoint(String),

    #[error("excluded evaluation point v0 = {0} (must not be 0 or ±1)")]
    ExcludedPoint(String),

    #[error("series inversion requires a nonzero leading coefficient")]
    NonInvertibleSeries,

    #[error("exp of a series with a constant term")]
    ExpWithConstantTerm,

    #[error("degree cap {cap} exceeded (needed {needed}) in {context}")]
    CapOverflow {
        cap: i64,
        needed: i64,
        context: String,
    },

    #[error("inhomogeneous vector where a homogeneous one is required")]
    Inhomogeneous,

    #[error("lattice dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("kernel outside the region-expansion catalogue: {0}")]
    UnsupportedKernel(String),

    #[error("negative argument not allowed: {0}")]
    NegativeArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
