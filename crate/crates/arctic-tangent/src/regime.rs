use arctic_model::ModelParams;

use crate::TangentError;

/// Floating-point (Δ, t) pair used by all curve formulas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Regime {
    pub delta: f64,
    pub t: f64,
}

impl From<&ModelParams> for Regime {
    fn from(p: &ModelParams) -> Self {
        Regime { delta: p.delta, t: p.t }
    }
}

impl Regime {
    pub fn new(delta: f64, t: f64) -> Self {
        Regime { delta, t }
    }

    pub fn ice() -> Self {
        Regime { delta: 0.5, t: 1.0 }
    }

    pub fn free_fermion(t: f64) -> Self {
        Regime { delta: 0.0, t }
    }

    /// t² − 2Δt + 1, i.e. (c/a)².
    pub fn c2(&self) -> f64 {
        self.t * self.t - 2.0 * self.delta * self.t + 1.0
    }

    /// ω = (c/b)² = (t² − 2Δt + 1)/t².
    pub fn omega(&self) -> f64 {
        self.c2() / (self.t * self.t)
    }

    /// θ = (2Δt − 1)/(t² − 2Δt + 1).
    pub fn theta(&self) -> f64 {
        (2.0 * self.delta * self.t - 1.0) / self.c2()
    }

    pub fn check(&self) -> Result<(), TangentError> {
        let c2 = self.c2();
        if !(self.t > 0.0) || !(c2 > 0.0) || !c2.is_finite() {
            return Err(TangentError::NonProbabilisticWeights(c2));
        }
        Ok(())
    }

    /// The subregion a ≤ c, where the tangent construction is controlled.
    pub fn is_validated(&self) -> bool {
        self.c2() >= 1.0
    }

    pub fn is_ice(&self) -> bool {
        (self.delta - 0.5).abs() < 1e-15 && (self.t - 1.0).abs() < 1e-15
    }

    pub fn is_free_fermion(&self) -> bool {
        self.delta.abs() < 1e-15
    }
}
