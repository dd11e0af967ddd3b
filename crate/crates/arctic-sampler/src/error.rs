use thiserror::Error;

use arctic_enum::EnumError;
use arctic_model::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("no verified monotone structure: {0}")]
    NotMonotone(String),
    #[error("exact sampling needs the ice point a = b = c")]
    NonIcePoint,
    #[error("no coalescence after {epoch} sweeps ({uncoalesced} lanes apart)")]
    NoCoalescence { epoch: u64, uncoalesced: u32 },
    #[error("no configuration satisfies the boundary conditions")]
    NoValidConfiguration,
    #[error("density field is constant")]
    DegenerateField,
    #[error("statistics hold no samples")]
    EmptyStats,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Enum(#[from] EnumError),
}
