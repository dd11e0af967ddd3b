use crate::{REvaluator, Regime, TangentError};

/// Stationary point of the Λ_{N,L} sum for a given u = L/N.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleSolution {
    pub xi_sp: f64,
    pub eta_sp: f64,
    pub u: f64,
    pub z: f64,
    /// Turn density l/N; equal to η_sp.
    pub lambda: f64,
    /// λ/u.
    pub d_ratio: f64,
}

/// η_sp = [−(ξ + u) + √((ξ + u)² + 4θξu)]/(2θ), in the rationalised form
/// 2ξu/((ξ + u) + √(…)) which also covers θ = 0.
pub fn saddle_eta(u: f64, xi: f64, regime: &Regime) -> f64 {
    let theta = regime.theta();
    let s = xi + u;
    let disc = s * s + 4.0 * theta * xi * u;
    if s == 0.0 {
        return 0.0;
    }
    2.0 * xi * u / (s + disc.max(0.0).sqrt())
}

fn ell(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// S(ξ, η; u) with the boundary term lim (1/N) ln H^(ξN) supplied by `sn`.
pub fn saddle_action(xi: f64, eta: f64, u: f64, regime: &Regime, sn: impl Fn(f64) -> f64) -> Result<f64, TangentError> {
    if !(eta > 0.0 && eta < xi && eta < u) {
        return Err(TangentError::DomainError { xi, eta, u });
    }
    Ok(ell(xi) - ell(eta) - ell(xi - eta) + ell(u) - ell(eta) - ell(u - eta) - 2.0 * eta * regime.t.ln()
        + eta * regime.c2().ln()
        + sn(xi))
}

/// Legendre dual of ln h: S_N(ξ) = f(z) − ξ ln z with r(z) = ξ.
pub fn boundary_term(r: &REvaluator, xi: f64) -> Result<f64, TangentError> {
    let z = r.invert(xi)?;
    Ok(r.log_h(z) - xi * z.ln())
}

/// Free-energy variation F(u) = S(ξ_sp, η_sp; u) + u ln t.
pub fn free_energy(u: f64, regime: &Regime, r: &REvaluator) -> Result<f64, TangentError> {
    let s = solve_saddle(u, regime, r)?;
    if u == 0.0 {
        return Ok(0.0);
    }
    let sn = |x: f64| boundary_term(r, x).unwrap_or(f64::NAN);
    Ok(saddle_action(s.xi_sp, s.eta_sp, u, regime, sn)? + u * regime.t.ln())
}

/// ξ_sp/u as a function of z: (t² − 2Δt + 1)z/((t²z − 2Δt + 1)(z − 1)).
pub fn xi_over_u(z: f64, regime: &Regime) -> f64 {
    let t2 = regime.t * regime.t;
    regime.c2() * z / ((t2 * z - 2.0 * regime.delta * regime.t + 1.0) * (z - 1.0))
}

/// Solves ξ = r(z), η = η_sp(u, ξ), z = ξ/(ξ − η) for given u ≥ 0.
pub fn solve_saddle(u: f64, regime: &Regime, r: &REvaluator) -> Result<SaddleSolution, TangentError> {
    regime.check()?;
    if !(u >= 0.0) || !u.is_finite() {
        return Err(TangentError::OutOfRange(format!("u = {u}")));
    }
    if u == 0.0 {
        let xi = r.r_w(1.0);
        return Ok(SaddleSolution { xi_sp: xi, eta_sp: 0.0, u, z: 1.0, lambda: 0.0, d_ratio: 0.0 });
    }
    // r(z) − u ξ/u(z) runs from −∞ at w = 1 to r(∞) > 0 at w = 0
    let g = |w: f64| r.r_w(w) - u * xi_over_u(1.0 / w, regime);
    let (mut a, mut b) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if g(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let w = 0.5 * (a + b);
    let z = 1.0 / w;
    let xi = r.r_w(w);
    let eta = saddle_eta(u, xi, regime);
    let z_check = xi / (xi - eta);
    if !((z_check - z).abs() <= 1e-6 * z) {
        return Err(TangentError::BranchMismatch(format!("z = {z} but ξ/(ξ − η) = {z_check}")));
    }
    Ok(SaddleSolution { xi_sp: xi, eta_sp: eta, u, z, lambda: eta, d_ratio: eta / u })
}
