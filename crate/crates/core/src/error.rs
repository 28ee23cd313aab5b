use thiserror::Error;

/// Errors raised by the algebra, series and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("context mismatch: R_{left} vs R_{right}")]
    ContextMismatch { left: usize, right: usize },

    #[error("element is not invertible (zero divisor or zero)")]
    NotInvertible,

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("usage error: {0}")]
    Usage(String),

    /// The symmetrization vanishes (numerically) at the evaluation point.
    #[error("point lies in the zero set of the symmetrization")]
    ZeroSet,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
