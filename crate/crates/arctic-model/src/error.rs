use thiserror::Error;

use crate::EdgeKey;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("weights must be strictly positive")]
    NonPositiveWeight,
    #[error("local pattern N,E,S,W = {pattern:?} is not one of the six vertex types")]
    InvalidLocalPattern { pattern: [bool; 4] },
    #[error("gauge move needs an internal degree-4 vertex, got {0:?}")]
    DegreeMismatch((i32, i32)),
    #[error("defect patterns have different face parities")]
    ParityMismatch,
    #[error("defect patterns differ on boundary edges by more than a gauge move")]
    BoundaryDefectMismatch,
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("no edge at {0:?}")]
    UnknownEdge(EdgeKey),
    #[error("edge {0:?} is not external")]
    NotExternal(EdgeKey),
    #[error("configuration disagrees with the boundary at edge {0:?}")]
    BoundaryMismatch(EdgeKey),
    #[error("expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("boundary thickness is unbalanced, no configuration exists")]
    NoValidConfiguration,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("no vertex at {0:?}")]
    UnknownVertex((i32, i32)),
    #[error("json: {0}")]
    Json(String),
}
