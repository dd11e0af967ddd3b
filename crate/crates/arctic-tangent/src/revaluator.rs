use arctic_exact::ExactPolynomial;

use crate::quad::integrate;
use crate::{AspectRatios, TangentError};

/// (√(z² − z + 1) − 1)/(z − 1), with the value 1/2 at z = 1 and 1 at z = ∞.
pub fn r_asm(z: f64) -> f64 {
    if z.is_infinite() {
        return 1.0;
    }
    r_asm_w(1.0 / z)
}

/// `r_asm` in the variable w = 1/z; rationalised so it is exact at both ends.
pub(crate) fn r_asm_w(w: f64) -> f64 {
    1.0 / (w + (1.0 - w + w * w).sqrt())
}

fn dr_asm_dw(w: f64) -> f64 {
    let q = (1.0 - w + w * w).sqrt();
    -(1.0 + (2.0 * w - 1.0) / (2.0 * q)) / ((w + q) * (w + q))
}

/// t²z/(t²z + 1).
pub fn r_free_fermion(z: f64, t: f64) -> f64 {
    if z.is_infinite() {
        return 1.0;
    }
    let t2 = t * t;
    t2 * z / (t2 * z + 1.0)
}

/// Finite-size estimates (1/N) z h′_N(z)/h_N(z) for a few N, extrapolated
/// linearly in 1/N from the two largest sizes.
#[derive(Clone, Debug)]
pub struct FiniteN {
    /// (N, coefficients of h_N in increasing degree), sorted by N.
    sizes: Vec<(usize, Vec<f64>)>,
}

impl FiniteN {
    pub fn new(polys: &[(usize, ExactPolynomial)]) -> Result<Self, TangentError> {
        if polys.is_empty() {
            return Err(TangentError::EmptySequence);
        }
        let mut sizes: Vec<(usize, Vec<f64>)> = polys.iter().map(|(n, p)| (*n, p.to_f64())).collect();
        sizes.sort_by_key(|s| s.0);
        sizes.dedup_by_key(|s| s.0);
        if sizes.len() < 2 {
            return Err(TangentError::TooFewSizes(sizes.len()));
        }
        if sizes.iter().any(|(n, c)| *n == 0 || c.is_empty() || c.iter().any(|&x| x < 0.0)) {
            return Err(TangentError::OutOfRange("h-polynomial".into()));
        }
        Ok(FiniteN { sizes })
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sizes.iter().map(|s| s.0).collect()
    }

    /// Mean degree of z^k under weights h_k z^k, and its log-partition.
    fn moments(c: &[f64], z: f64) -> (f64, f64) {
        let d = c.len() - 1;
        // for z > 1 factor out z^d to keep the sums bounded
        let (scale, x, flip) = if z > 1.0 { (d as f64 * z.ln(), 1.0 / z, true) } else { (0.0, z, false) };
        let (mut s0, mut s1, mut p) = (0.0, 0.0, 1.0);
        for i in 0..=d {
            let k = if flip { d - i } else { i };
            let term = c[k] * p;
            s0 += term;
            s1 += k as f64 * term;
            p *= x;
        }
        (s1 / s0, s0.ln() + scale)
    }

    /// (1/N) z d/dz ln h_N at the size with index `i`.
    pub fn r_at(&self, i: usize, z: f64) -> f64 {
        let (n, c) = &self.sizes[i];
        Self::moments(c, z).0 / *n as f64
    }

    fn log_h_at(&self, i: usize, z: f64) -> f64 {
        let (n, c) = &self.sizes[i];
        (Self::moments(c, z).1 - Self::moments(c, 1.0).1) / *n as f64
    }

    fn extrapolate(&self, f: impl Fn(usize) -> f64) -> f64 {
        let k = self.sizes.len();
        let (n1, n2) = (self.sizes[k - 2].0 as f64, self.sizes[k - 1].0 as f64);
        (n2 * f(k - 1) - n1 * f(k - 2)) / (n2 - n1)
    }

    pub fn r(&self, z: f64) -> f64 {
        self.extrapolate(|i| self.r_at(i, z))
    }

    pub fn log_h(&self, z: f64) -> f64 {
        self.extrapolate(|i| self.log_h_at(i, z))
    }
}

/// Extrapolated r(z) from exact h-polynomials.
pub fn r_finite_n(z: f64, polys: &[(usize, ExactPolynomial)]) -> Result<f64, TangentError> {
    if !(z > 0.0) {
        return Err(TangentError::NonPositiveZ(z));
    }
    Ok(FiniteN::new(polys)?.r(z))
}

#[derive(Clone, Debug)]
pub enum REvaluator {
    ClosedFormAsm,
    ClosedFormFreeFermion { t: f64 },
    FiniteNExtrapolated(FiniteN),
    TriangoloidClosedForm(AspectRatios),
}

impl REvaluator {
    pub fn finite_n(polys: &[(usize, ExactPolynomial)]) -> Result<Self, TangentError> {
        Ok(REvaluator::FiniteNExtrapolated(FiniteN::new(polys)?))
    }

    pub fn is_closed_form(&self) -> bool {
        !matches!(self, REvaluator::FiniteNExtrapolated(_))
    }

    pub fn r(&self, z: f64) -> f64 {
        match self {
            REvaluator::FiniteNExtrapolated(f) if z.is_infinite() => f.r(f64::MAX.sqrt()),
            REvaluator::FiniteNExtrapolated(f) => f.r(z),
            _ => self.r_w(if z.is_infinite() { 0.0 } else { 1.0 / z }),
        }
    }

    /// r as a function of w = 1/z ∈ [0, 1].
    pub fn r_w(&self, w: f64) -> f64 {
        match self {
            REvaluator::ClosedFormAsm => r_asm_w(w),
            REvaluator::ClosedFormFreeFermion { t } => t * t / (t * t + w),
            REvaluator::TriangoloidClosedForm(q) => tri_xi_w(q, w) + r_asm_w(w),
            REvaluator::FiniteNExtrapolated(f) => f.r(1.0 / w),
        }
    }

    /// Analytic dr/dw where a closed form exists.
    pub fn dr_dw(&self, w: f64) -> Option<f64> {
        match self {
            REvaluator::ClosedFormAsm => Some(dr_asm_dw(w)),
            REvaluator::ClosedFormFreeFermion { t } => {
                let t2 = t * t;
                Some(-t2 / ((t2 + w) * (t2 + w)))
            }
            REvaluator::TriangoloidClosedForm(q) => Some(tri_dxi_dw(q, w) + dr_asm_dw(w)),
            REvaluator::FiniteNExtrapolated(_) => None,
        }
    }

    /// dr/dz: analytic for closed forms, else a five-point central difference
    /// with step max(1e−5, 1e−4 z).
    pub fn dr_dz(&self, z: f64) -> f64 {
        if let Some(d) = self.dr_dw(1.0 / z) {
            return -d / (z * z);
        }
        let h = (1e-4 * z).max(1e-5);
        (-self.r(z + 2.0 * h) + 8.0 * self.r(z + h) - 8.0 * self.r(z - h) + self.r(z - 2.0 * h)) / (12.0 * h)
    }

    /// lim (1/N) ln h_N(z), normalised to 0 at z = 1, so that z f′ = r.
    pub fn log_h(&self, z: f64) -> f64 {
        match self {
            REvaluator::ClosedFormFreeFermion { t } => ((t * t * z + 1.0) / (t * t + 1.0)).ln(),
            REvaluator::FiniteNExtrapolated(f) => f.log_h(z),
            _ => integrate(|v| self.r(v.exp()), 0.0, z.ln()),
        }
    }

    pub fn limit_at_infinity(&self) -> f64 {
        match self {
            REvaluator::TriangoloidClosedForm(q) => 1.0 + q.beta,
            REvaluator::FiniteNExtrapolated(f) => f.r(f64::MAX.sqrt()),
            _ => 1.0,
        }
    }

    /// z such that r(z) = ξ, by bisection on w.
    pub fn invert(&self, xi: f64) -> Result<f64, TangentError> {
        let (lo_r, hi_r) = (self.r_w(1.0), self.r_w(0.0));
        if !(xi > lo_r && xi < hi_r) {
            return Err(TangentError::OutOfRange(format!("ξ = {xi} outside ({lo_r}, {hi_r})")));
        }
        // r_w decreasing in w
        let (mut a, mut b) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if self.r_w(m) > xi {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(1.0 / (0.5 * (a + b)))
    }
}

/// D(z)/z² written in w = 1/z.
pub(crate) fn tri_disc_w(q: &AspectRatios, w: f64) -> f64 {
    let p = q.gamma - q.beta + (q.alpha + q.beta) * w;
    p * p + 4.0 * q.gamma * q.beta * (1.0 - w)
}

/// ξ_sp of the triangoloid saddle, in w; the two rationalised forms avoid
/// cancellation on either sign of the linear part.
fn tri_xi_w(q: &AspectRatios, w: f64) -> f64 {
    let p = q.gamma - q.beta + (q.alpha + q.beta) * w;
    let s = tri_disc_w(q, w).max(0.0).sqrt();
    if p >= 0.0 {
        let den = p + s;
        if den == 0.0 {
            0.0
        } else {
            2.0 * q.gamma * q.beta / den
        }
    } else {
        (s - p) / (2.0 * (1.0 - w))
    }
}

fn tri_dxi_dw(q: &AspectRatios, w: f64) -> f64 {
    // ξ = (s − p)/(2(1 − w)) in both forms
    let p = q.gamma - q.beta + (q.alpha + q.beta) * w;
    let dp = q.alpha + q.beta;
    let disc = tri_disc_w(q, w);
    let s = disc.max(0.0).sqrt();
    let ds = (2.0 * p * dp - 4.0 * q.gamma * q.beta) / (2.0 * s);
    let xi = tri_xi_w(q, w);
    if w < 1.0 - 1e-6 {
        ((ds - dp) + 2.0 * xi) / (2.0 * (1.0 - w))
    } else {
        // near w = 1 use ξ = 2γβ/(p + s)
        -2.0 * q.gamma * q.beta * (dp + ds) / ((p + s) * (p + s))
    }
}
