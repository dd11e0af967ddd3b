//! Exact partition functions and boundary correlators on small domains, by
//! transfer matrix over the sweep frontier, with an exhaustive oracle.

mod correlator;
mod error;
mod naive;
mod trapezoid;
mod transfer;

use num_rational::BigRational;
use num_traits::Zero;

use arctic_model::{DefectPattern, DomainKind, DomainSpec, Lattice, ModelError, ModelParams};

pub use correlator::{boundary_correlator, boundary_correlator_on, CorrelatorTable, Side};
pub use error::EnumError;
pub use naive::{all_configurations, naive_partition_function};
pub use trapezoid::trapezoid_tilings;
pub use transfer::{budget_from_env, sweep, Observation, Plan, TransferSampler, TransferState, DEFAULT_BUDGET};

pub fn partition_function_on(lat: &Lattice, params: &ModelParams, budget: usize) -> Result<BigRational, EnumError> {
    let z = sweep(lat, params, None, budget)?.into_values().fold(BigRational::zero(), |a, w| a + w);
    if z.is_zero() {
        return Err(EnumError::NoValidConfiguration);
    }
    Ok(z)
}

/// Σ over configurations of Π vertex weights.
pub fn partition_function(domain: &DomainSpec, params: &ModelParams) -> Result<BigRational, EnumError> {
    if let DomainKind::TrapezoidGt { .. } = domain.kind {
        return Err(EnumError::UnsupportedDomain(
            "lozenge trapezoids are counted by trapezoid_tilings, not by a vertex model".into(),
        ));
    }
    let lat = domain.lattice().map_err(|e| match e {
        ModelError::NoValidConfiguration => EnumError::NoValidConfiguration,
        e => EnumError::Model(e),
    })?;
    partition_function_on(&lat, params, budget_from_env())
}

/// True iff the partition functions with `lat`'s defects and with
/// `alternate` agree. Both patterns must share face parities.
pub fn gauge_invariance_check(lat: &Lattice, params: &ModelParams, alternate: &DefectPattern) -> Result<bool, EnumError> {
    if lat.face_parities(lat.defects()) != lat.face_parities(alternate) {
        return Err(EnumError::ParityMismatch);
    }
    let budget = budget_from_env();
    let z0 = partition_function_on(lat, params, budget)?;
    let z1 = partition_function_on(&lat.with_defects(alternate.clone())?, params, budget)?;
    Ok(z0 == z1)
}
