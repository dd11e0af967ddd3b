use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TangentError {
    #[error("weights outside the probabilistic regime: t² − 2Δt + 1 = {0}")]
    NonProbabilisticWeights(f64),
    #[error("empty h-polynomial sequence")]
    EmptySequence,
    #[error("need at least two distinct sizes, got {0}")]
    TooFewSizes(usize),
    #[error("z must be positive, got {0}")]
    NonPositiveZ(f64),
    #[error("singular envelope system at z = {0}")]
    SingularSystem(f64),
    #[error("point ({xi}, {eta}) outside the action domain for u = {u}")]
    DomainError { xi: f64, eta: f64, u: f64 },
    #[error("negative discriminant {value} at z = {z}")]
    NegativeDiscriminant { z: f64, value: f64 },
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("square-root branch check failed: {0}")]
    BranchMismatch(String),
    #[error("invalid aspect ratios: {0}")]
    InvalidRatios(String),
}
