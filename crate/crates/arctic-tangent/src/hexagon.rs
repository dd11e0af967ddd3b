use crate::arc::{solve2, ArcLabel, ArcPoint, GeneralLine, ParametricArc};
use crate::{AspectRatios, TangentError};

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn coefficients(xi: f64, q: &AspectRatios) -> (GeneralLine, GeneralLine) {
    let (a, b, g) = (q.alpha, q.beta, q.gamma);
    let s = a + b + g;
    let line = GeneralLine::new(
        2.0 * (a * s - (a + g) * xi),
        2.0 / SQRT3 * (a * s - (3.0 * a + 2.0 * b + g) * xi + 2.0 * xi * xi),
        a * (a + b) * s - 2.0 * a * s * xi + (a + g) * xi * xi,
    );
    let d = GeneralLine::new(
        -2.0 * (a + g),
        2.0 / SQRT3 * (-(3.0 * a + 2.0 * b + g) + 4.0 * xi),
        -2.0 * a * s + 2.0 * (a + g) * xi,
    );
    (line, d)
}

/// Line of the family with parameter ξ ∈ [0, α], in the frame centred on
/// the hexagon: it joins the top-side point at abscissa (4ξ − 3α − 2β − γ)/4
/// with the saddle point η = γξ/(α + β + γ − ξ) on the upper-left side.
pub fn hexagon_family(xi: f64, q: &AspectRatios) -> Result<GeneralLine, TangentError> {
    if !(0.0..=q.alpha).contains(&xi) {
        return Err(TangentError::OutOfRange(format!("ξ = {xi} outside [0, {}]", q.alpha)));
    }
    Ok(coefficients(xi, q).0)
}

/// Envelope of `hexagon_family` on `n` evenly spaced ξ, ends included.
/// The `z` field of each point holds ξ.
pub fn hexagon_arc(q: &AspectRatios, n: usize) -> Result<ParametricArc, TangentError> {
    if n < 2 {
        return Err(TangentError::OutOfRange("need at least two points".into()));
    }
    let mut arc = ParametricArc::new(ArcLabel::HexagonWest);
    for i in 0..n {
        let xi = q.alpha * i as f64 / (n - 1) as f64;
        let (l, d) = coefficients(xi, q);
        let (x, y) = solve2(&l, &d).ok_or(TangentError::SingularSystem(xi))?;
        arc.points.push(ArcPoint { z: xi, x, y });
    }
    Ok(arc)
}

/// E(x, y) = 3αβγ(α+β+γ) − 3(α+γ)²x² + 2√3(α−γ)(α+2β+γ)xy − [(α+2β+γ)² − 4αγ]y²,
/// positive inside the inscribed ellipse.
pub fn hexagon_ellipse_residual(x: f64, y: f64, q: &AspectRatios) -> f64 {
    let (a, b, g) = (q.alpha, q.beta, q.gamma);
    let s = a + b + g;
    let k = a + 2.0 * b + g;
    3.0 * a * b * g * s - 3.0 * (a + g).powi(2) * x * x + 2.0 * SQRT3 * (a - g) * k * x * y - (k * k - 4.0 * a * g) * y * y
}

/// Lines carrying the six sides, counter-clockwise from the upper-left one:
/// upper-left, lower-left, bottom, lower-right, upper-right, top.
pub fn hexagon_sides(q: &AspectRatios) -> [GeneralLine; 6] {
    let (a, b, g) = (q.alpha, q.beta, q.gamma);
    // y = √3/2 (±2x + k) written as ±√3 x − y + √3 k/2 = 0
    [
        GeneralLine::new(SQRT3, -1.0, SQRT3 * (b + g) / 2.0),
        GeneralLine::new(-SQRT3, -1.0, -SQRT3 * (a + b) / 2.0),
        GeneralLine::new(0.0, 1.0, SQRT3 * (a + g) / 4.0),
        GeneralLine::new(SQRT3, -1.0, -SQRT3 * (b + g) / 2.0),
        GeneralLine::new(-SQRT3, -1.0, SQRT3 * (a + b) / 2.0),
        GeneralLine::new(0.0, 1.0, -SQRT3 * (a + g) / 4.0),
    ]
}

/// The six corners, as intersections of consecutive sides.
pub fn hexagon_corners(q: &AspectRatios) -> Vec<(f64, f64)> {
    let s = hexagon_sides(q);
    (0..6).filter_map(|i| solve2(&s[i], &s[(i + 1) % 6])).collect()
}
