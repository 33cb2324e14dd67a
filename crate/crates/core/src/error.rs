use thiserror::Error;

/// Errors produced by the exponential-family machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {pivot:e} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parameter outside the natural parameter space: {0}")]
    OutOfDomain(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(String, String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("family {0} has a nonzero carrier measure; use the carrier-corrected estimator")]
    CarrierNotZero(String),

    #[error("family {0} has a zero carrier measure; the correction factor is exactly 1")]
    CarrierIsZero(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
