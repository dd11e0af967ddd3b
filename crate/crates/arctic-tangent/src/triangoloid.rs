use crate::arc::{ArcLabel, ArcPoint, ParametricArc};
use crate::revaluator::tri_disc_w;
use crate::TangentError;

/// Side ratios α, β, γ of a triangoloid or hexagon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AspectRatios {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl AspectRatios {
    /// Free ratios, as used for the hexagon. Zero is allowed for degenerate limits.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, TangentError> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !(ok(alpha) && ok(beta) && ok(gamma)) || alpha + beta + gamma <= 0.0 {
            return Err(TangentError::InvalidRatios(format!("({alpha}, {beta}, {gamma})")));
        }
        Ok(AspectRatios { alpha, beta, gamma })
    }

    /// Ratios rescaled to α + β + γ = 1, as the triangoloid formulas require.
    pub fn normalized(alpha: f64, beta: f64, gamma: f64) -> Result<Self, TangentError> {
        let q = Self::new(alpha, beta, gamma)?;
        let s = alpha + beta + gamma;
        Ok(AspectRatios { alpha: q.alpha / s, beta: q.beta / s, gamma: q.gamma / s })
    }

    /// a = ⌈Nα⌉ etc. for the sizes of a finite triangoloid.
    pub fn from_sizes(a: usize, b: usize, c: usize) -> Result<Self, TangentError> {
        Self::normalized(a as f64, b as f64, c as f64)
    }

    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }

    fn is_normalized(&self) -> bool {
        (self.sum() - 1.0).abs() < 1e-12
    }

    fn permuted(&self, k: usize) -> AspectRatios {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        match k % 3 {
            0 => AspectRatios { alpha: a, beta: b, gamma: g },
            1 => AspectRatios { alpha: g, beta: a, gamma: b },
            _ => AspectRatios { alpha: b, beta: g, gamma: a },
        }
    }

    fn swapped(&self) -> AspectRatios {
        AspectRatios { alpha: self.beta, beta: self.alpha, gamma: self.gamma }
    }
}

/// South contact κ = (α + β + γ)/2 + βγ/(α + γ).
pub fn triangoloid_kappa(q: &AspectRatios) -> f64 {
    q.sum() / 2.0 + q.beta * q.gamma / (q.alpha + q.gamma)
}

/// ζ in the variable w = 1/z; `sign` selects the branch of the last summand
/// (−1 for the curve itself, +1 for the alternate branch).
fn zeta_w(w: f64, q: &AspectRatios, sign: f64) -> Result<f64, TangentError> {
    let disc = tri_disc_w(q, w);
    if disc < 0.0 {
        return Err(TangentError::NegativeDiscriminant { z: 1.0 / w, value: disc });
    }
    let first = (3.0 - q.alpha) / 2.0 - (2.0 - w) / (2.0 * (1.0 - w + w * w).sqrt());
    let num = (1.0 - q.alpha).powi(2) + (q.alpha * q.gamma - q.beta) * w;
    // at a double root the ratio is a sign; its value there is taken as 0
    let last = if disc == 0.0 { 0.0 } else { num / (2.0 * disc.sqrt()) };
    Ok(first + sign * last)
}

/// ζ(z; α, β, γ) for z ∈ [1, ∞].
pub fn triangoloid_zeta(z: f64, q: &AspectRatios) -> Result<f64, TangentError> {
    if !(z >= 1.0) {
        return Err(TangentError::OutOfRange(format!("z = {z} below 1")));
    }
    zeta_w(if z.is_infinite() { 0.0 } else { 1.0 / z }, q, -1.0)
}

/// Local-frame point of the south-east arc: x = 1 + β − ζ(z), y = ζ(z/(z − 1); β, α, γ).
fn local_point(w: f64, q: &AspectRatios, sign: f64) -> Result<(f64, f64), TangentError> {
    Ok((1.0 + q.beta - zeta_w(w, q, sign)?, zeta_w(1.0 - w, &q.swapped(), sign)?))
}

/// Grid with the two contact limits z = 1 and z = ∞ added.
fn closed_grid(grid: &[f64]) -> Result<Vec<f64>, TangentError> {
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid.first().is_some_and(|&z| z <= 1.0) {
        return Err(TangentError::OutOfRange("z grid must increase strictly inside (1, ∞)".into()));
    }
    let mut zs = Vec::with_capacity(grid.len() + 2);
    zs.push(1.0);
    zs.extend_from_slice(grid);
    zs.push(f64::INFINITY);
    Ok(zs)
}

/// Arc `index` of the triangoloid curve in the global frame.
///
/// The global frame has its origin at the south-west corner, the south side
/// along x ∈ [0, 1 + β] and the east side at x = 1 + β, in units of a + b + c.
/// The three patches are P1 = [0, α+β]×[0, α+γ], P2 = [α+β, 1+β]×[0, α+γ]
/// and P3 = [α+β, 1+β]×[α+γ, 1+α]; the north side of P1 is glued to the
/// west side of P3. Arc 0 touches south and east; arc 1 east and the
/// folded third side (north of P3 followed by west of P1); arc 2 that side and south.
pub fn triangoloid_arc(grid: &[f64], q: &AspectRatios, index: u8) -> Result<ParametricArc, TangentError> {
    if !q.is_normalized() {
        return Err(TangentError::InvalidRatios("triangoloid ratios must sum to 1".into()));
    }
    if index > 2 {
        return Err(TangentError::OutOfRange(format!("arc index {index}")));
    }
    let local = q.permuted(index as usize);
    let mut arc = ParametricArc::new(ArcLabel::Triangoloid(index));
    for z in closed_grid(grid)? {
        let w = if z.is_infinite() { 0.0 } else { 1.0 / z };
        let (xl, yl) = local_point(w, &local, -1.0)?;
        let (x, y) = to_global(q, index, xl, yl);
        arc.points.push(ArcPoint { z, x, y });
    }
    Ok(arc)
}

/// Places a point given in the local frame of arc `index` into the global frame,
/// crossing the P1/P3 seam where the local chart reaches past it.
fn to_global(q: &AspectRatios, index: u8, xl: f64, yl: f64) -> (f64, f64) {
    let (cx, cy) = (q.alpha + q.beta, q.alpha + q.gamma);
    match index {
        0 => (xl, yl),
        1 => {
            let (x, y) = (1.0 + q.beta - yl, xl);
            if x < cx && y > cy {
                // beyond the west side of P3: rotate onto P1
                (1.0 + q.alpha - y, x + q.gamma - q.beta)
            } else {
                (x, y)
            }
        }
        _ => {
            let (x, y) = (yl, 1.0 + q.gamma - xl);
            if x < cx && y > cy {
                // above the north side of P1: rotate onto P3
                (cx + (y - cy), 1.0 + q.alpha - x)
            } else {
                (x, y)
            }
        }
    }
}

/// Alternate-branch curve for small γ. Marked experimental: it is not
/// derived, and for γ > 0 its ends do not meet.
#[derive(Clone, Debug)]
pub struct InternalGuess {
    pub arc: ParametricArc,
    pub experimental: bool,
    /// Sum of the distances of the two ends from the conical point along the seam.
    pub gap: f64,
    /// γ(1 − αβ)/((α + γ)(β + γ)).
    pub predicted_gap: f64,
}

pub fn triangoloid_internal_guess(grid: &[f64], q: &AspectRatios) -> Result<InternalGuess, TangentError> {
    if !q.is_normalized() {
        return Err(TangentError::InvalidRatios("triangoloid ratios must sum to 1".into()));
    }
    let mut arc = ParametricArc::new(ArcLabel::TriangoloidInternalGuess);
    for z in closed_grid(grid)? {
        let w = if z.is_infinite() { 0.0 } else { 1.0 / z };
        let (x, y) = local_point(w, q, 1.0)?;
        arc.points.push(ArcPoint { z, x, y });
    }
    let (cx, cy) = (q.alpha + q.beta, q.alpha + q.gamma);
    let first = arc.points[0];
    let last = arc.points[arc.points.len() - 1];
    // the z = 1 end lies on the north side of P1, the z = ∞ end on the west side of P3
    let d1 = cx - first.x;
    let d2 = last.y - cy;
    let predicted_gap = q.gamma * (1.0 - q.alpha * q.beta) / ((q.alpha + q.gamma) * (q.beta + q.gamma));
    Ok(InternalGuess { arc, experimental: true, gap: d1 + d2, predicted_gap })
}
