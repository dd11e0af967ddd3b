use thiserror::Error;

use arctic_model::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("state space too large ({states} states over budget)")]
    TooLarge { states: usize },
    #[error("no configuration satisfies the boundary conditions")]
    NoValidConfiguration,
    #[error("refinement position on this side is not unique")]
    NotDomainWallType,
    #[error("defect patterns have different face parities")]
    ParityMismatch,
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
