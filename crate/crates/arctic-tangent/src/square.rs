use crate::arc::{ArcLabel, ArcPoint, GeneralLine, Line, ParametricArc};
use crate::{REvaluator, Regime, TangentError};

/// m(z) = (z − 1)(t²z − 2Δt + 1)/(z(t² − 2Δt + 1)).
pub fn slope_m(z: f64, regime: &Regime) -> Result<f64, TangentError> {
    regime.check()?;
    if z.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let t2 = regime.t * regime.t;
    Ok((z - 1.0) * (t2 * z - 2.0 * regime.delta * regime.t + 1.0) / (z * regime.c2()))
}

/// 1/m as a function of w = 1/z, finite on all of [0, 1).
fn inv_slope_w(w: f64, regime: &Regime) -> f64 {
    let t2 = regime.t * regime.t;
    let p = 2.0 * regime.delta * regime.t - 1.0;
    regime.c2() * w / ((1.0 - w) * (t2 - p * w))
}

fn d_inv_slope_w(w: f64, regime: &Regime) -> f64 {
    let t2 = regime.t * regime.t;
    let p = 2.0 * regime.delta * regime.t - 1.0;
    let den = (1.0 - w) * (t2 - p * w);
    regime.c2() * (t2 - p * w * w) / (den * den)
}

/// The member z of the family x − y/m(z) − r(z) = 0.
pub fn line_family(z: f64, regime: &Regime, r: &REvaluator) -> Result<Line, TangentError> {
    regime.check()?;
    if !(z >= 1.0) {
        return Err(TangentError::OutOfRange(format!("z = {z} below 1")));
    }
    let w = if z.is_infinite() { 0.0 } else { 1.0 / z };
    if w == 1.0 {
        return Ok(Line::new(0.0, r.r_w(1.0), z));
    }
    Ok(Line::from_inverse(inv_slope_w(w, regime), r.r(z), z))
}

/// Envelope point at w = 1/z, from x = g y + r and ∂/∂w: y = −r′/g′.
fn envelope_point(w: f64, regime: &Regime, r: &REvaluator) -> (f64, f64) {
    let rr = r.r_w(w);
    if w >= 1.0 {
        return (rr, 0.0);
    }
    let drdw = match r.dr_dw(w) {
        Some(d) => d,
        None => {
            let z = 1.0 / w;
            -z * z * r.dr_dz(z)
        }
    };
    let y = -drdw / d_inv_slope_w(w, regime);
    (rr + inv_slope_w(w, regime) * y, y)
}

/// South-east arc as the envelope of `line_family` over `grid` ⊂ (1, ∞).
/// For closed-form evaluators the two contact points (z = 1 and z = ∞) are
/// appended from their limits.
pub fn square_arc(regime: &Regime, r: &REvaluator, grid: &[f64]) -> Result<ParametricArc, TangentError> {
    regime.check()?;
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid.first().is_some_and(|&z| z <= 1.0) {
        return Err(TangentError::OutOfRange("z grid must increase strictly inside (1, ∞)".into()));
    }
    let mut arc = ParametricArc::new(ArcLabel::SouthEast);
    let limits = r.is_closed_form();
    if limits {
        let (x, y) = envelope_point(1.0, regime, r);
        arc.points.push(ArcPoint { z: 1.0, x, y });
    }
    for &z in grid {
        let (x, y) = envelope_point(1.0 / z, regime, r);
        arc.points.push(ArcPoint { z, x, y });
    }
    if limits {
        let (x, y) = envelope_point(0.0, regime, r);
        arc.points.push(ArcPoint { z: f64::INFINITY, x, y });
    }
    Ok(arc)
}

/// Closed-form evaluator for the square, where one exists.
pub fn square_evaluator(regime: &Regime) -> Result<REvaluator, TangentError> {
    regime.check()?;
    if regime.is_ice() {
        Ok(REvaluator::ClosedFormAsm)
    } else if regime.is_free_fermion() {
        Ok(REvaluator::ClosedFormFreeFermion { t: regime.t })
    } else {
        Err(TangentError::OutOfRange(format!(
            "no closed-form r(z) at Δ = {}, t = {}; supply finite-size h-polynomials",
            regime.delta, regime.t
        )))
    }
}

/// All four arcs. North-west is the diagonal image of south-east; the
/// south-west arc is the west-east mirror of the south-east arc at 1/t, and
/// north-east is its anti-diagonal image.
pub fn square_all_arcs(regime: &Regime, grid: &[f64]) -> Result<Vec<ParametricArc>, TangentError> {
    let se = square_arc(regime, &square_evaluator(regime)?, grid)?;
    let mirrored = Regime::new(regime.delta, 1.0 / regime.t);
    let se_inv = square_arc(&mirrored, &square_evaluator(&mirrored)?, grid)?;
    let nw = se.map(ArcLabel::NorthWest, |x, y| (y, x));
    let sw = se_inv.map(ArcLabel::SouthWest, |x, y| (1.0 - x, y));
    let ne = sw.map(ArcLabel::NorthEast, |x, y| (1.0 - y, 1.0 - x));
    Ok(vec![se, sw, nw, ne])
}

/// Solves the homogeneous stationarity system for the ratio d = λ/η and the
/// slope, then returns |m − m(z)|.
pub fn local_criterium_check(z: f64, regime: &Regime) -> Result<f64, TangentError> {
    let expected = slope_m(z, regime)?;
    let omega = regime.omega();
    // md = 1 − 1/z from the refinement ratio, then m d² = ω (1 − d)(1 − md)
    let q = if z.is_infinite() { 1.0 } else { (z - 1.0) / z };
    let d = omega * (1.0 - q) / (q + omega * (1.0 - q));
    if d == 0.0 {
        return Ok(if expected.is_infinite() { 0.0 } else { f64::INFINITY });
    }
    Ok((q / d - expected).abs())
}

/// General form of a family member, for use with the generic `envelope`.
pub fn family_coefficients(z: f64, regime: &Regime, r: &REvaluator) -> Result<GeneralLine, TangentError> {
    Ok(line_family(z, regime, r)?.coefficients())
}
