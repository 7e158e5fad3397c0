use thiserror::Error;

/// Errors raised anywhere in the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex count N = {0} must be even")]
    OddN(usize),

    #[error("vertex count N = {0} is too small (need N >= 6)")]
    NTooSmall(usize),

    #[error("bridge weight w = {0} must be a finite non-negative number")]
    NegativeWeight(f64),

    #[error("jumping rate gamma = {0} must be a finite positive number")]
    NonPositiveGamma(f64),

    #[error("marked vertex {index} is not a valid target for N = {n} (must lie in 0..{half} and differ from the bridge vertex 1)", half = n / 2)]
    BadMarkedIndex { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver failed to converge after {0} iterations")]
    ConvergenceFailure(usize),

    #[error("no peak found: observable is monotone over (0, {0}]")]
    NoPeakFound(f64),

    #[error("parameters do not belong to the {regime} regime: {reason}")]
    RegimeMismatch {
        regime: &'static str,
        reason: String,
    },

    #[error("vectors are not degenerate eigenvectors of H0: {0}")]
    NotDegenerate(String),

    #[error("full-space dimension N = {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
