use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ModelError;

/// Boltzmann weights of the three vertex classes, with the derived
/// anisotropy `delta`, ratio `t`, `omega` and `theta`.
///
/// The derived quantities are rational functions of the weights, so they are
/// kept exactly and cached as `f64`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub wa: BigRational,
    pub wb: BigRational,
    pub wc: BigRational,
    pub delta: f64,
    pub t: f64,
    pub omega: f64,
    pub theta: f64,
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl ModelParams {
    pub fn new(wa: BigRational, wb: BigRational, wc: BigRational) -> Result<Self, ModelError> {
        if !wa.is_positive() || !wb.is_positive() || !wc.is_positive() {
            return Err(ModelError::NonPositiveWeight);
        }
        let mut p = ModelParams { wa, wb, wc, delta: 0.0, t: 0.0, omega: 0.0, theta: 0.0 };
        p.delta = to_f64(&p.delta_exact());
        p.t = to_f64(&p.t_exact());
        p.omega = to_f64(&p.omega_exact());
        p.theta = to_f64(&p.theta_exact());
        Ok(p)
    }

    pub fn from_integers(a: i64, b: i64, c: i64) -> Result<Self, ModelError> {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        Self::new(q(a), q(b), q(c))
    }

    pub fn ice_point() -> Self {
        Self::from_integers(1, 1, 1).expect("unit weights are positive")
    }

    pub fn is_ice_point(&self) -> bool {
        self.wa == self.wb && self.wb == self.wc
    }

    /// (a² + b² − c²) / (2ab)
    pub fn delta_exact(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        (&self.wa * &self.wa + &self.wb * &self.wb - &self.wc * &self.wc) / (two * &self.wa * &self.wb)
    }

    /// b / a
    pub fn t_exact(&self) -> BigRational {
        &self.wb / &self.wa
    }

    /// (c / b)²
    pub fn omega_exact(&self) -> BigRational {
        let r = &self.wc / &self.wb;
        &r * &r
    }

    /// t² − 2Δt + 1, which equals (c/a)² for positive weights.
    pub fn gap_exact(&self) -> BigRational {
        let r = &self.wc / &self.wa;
        &r * &r
    }

    /// (2Δt − 1) / (t² − 2Δt + 1)
    pub fn theta_exact(&self) -> BigRational {
        let t = self.t_exact();
        let two_dt = BigRational::from_integer(BigInt::from(2)) * self.delta_exact() * &t;
        (two_dt - BigRational::one()) / self.gap_exact()
    }

    /// Always true for positive weights: Δ < (t + 1/t)/2.
    pub fn is_probabilistic(&self) -> bool {
        let t = self.t_exact();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let bound = (&t + t.recip()) * half;
        self.delta_exact() < bound && !self.gap_exact().is_zero()
    }

    /// Tangent-method control region Δ ≤ t/2, i.e. a ≤ c.
    pub fn in_validated_region(&self) -> bool {
        self.wa <= self.wc
    }

    pub fn weight(&self, class: crate::WeightClass) -> &BigRational {
        match class {
            crate::WeightClass::A => &self.wa,
            crate::WeightClass::B => &self.wb,
            crate::WeightClass::C => &self.wc,
        }
    }
}
