use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("positions must be strictly increasing and at least 1")]
    NotStrictlyIncreasing,
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}
