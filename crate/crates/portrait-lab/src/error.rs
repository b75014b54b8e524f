use thiserror::Error;

/// Errors surfaced by the library. CLI maps these to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid portrait: {0}")]
    InvalidPortrait(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("portraits act on different point counts ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("{0}")]
    Domain(String),

    #[error("ideal is not zero-dimensional (dim = {0})")]
    NotZeroDimensional(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("Groebner budget of {0} ms exceeded")]
    Timeout(u64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
