use std::io::{self, Write};

use crate::TangentError;

/// Line F(x, y) = 0 through (r, 0) with slope m, for the member z of a family.
///
/// At z = 1 the slope vanishes and the line is y = 0; at z = ∞ it is
/// vertical. `coefficients` gives a normalised general form valid at both.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub slope: f64,
    pub x_intercept: f64,
    pub z: f64,
    /// 1/m, kept separately so the vertical limit stays finite.
    pub(crate) inv_slope: f64,
}

impl Line {
    pub fn new(slope: f64, x_intercept: f64, z: f64) -> Self {
        Line { slope, x_intercept, z, inv_slope: 1.0 / slope }
    }

    pub(crate) fn from_inverse(inv_slope: f64, x_intercept: f64, z: f64) -> Self {
        Line { slope: 1.0 / inv_slope, x_intercept, z, inv_slope }
    }

    /// (A, B, C) with A x + B y + C = 0 and A² + B² = 1.
    pub fn coefficients(&self) -> GeneralLine {
        let g = self.inv_slope;
        let (a, b, c) = if g.abs() <= 1.0 {
            (1.0, -g, -self.x_intercept)
        } else {
            (self.slope, -1.0, -self.slope * self.x_intercept)
        };
        GeneralLine::new(a, b, c).normalized()
    }
}

/// A x + B y + C = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralLine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl GeneralLine {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        GeneralLine { a, b, c }
    }

    pub fn normalized(&self) -> Self {
        let n = self.a.hypot(self.b);
        GeneralLine { a: self.a / n, b: self.b / n, c: self.c / n }
    }

    /// Signed distance; the line need not be normalised.
    pub fn signed_distance(&self, x: f64, y: f64) -> f64 {
        (self.a * x + self.b * y + self.c) / self.a.hypot(self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcLabel {
    SouthEast,
    SouthWest,
    NorthEast,
    NorthWest,
    Triangoloid(u8),
    TriangoloidInternalGuess,
    HexagonWest,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcPoint {
    pub z: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParametricArc {
    pub label: ArcLabel,
    pub points: Vec<ArcPoint>,
}

impl ParametricArc {
    pub fn new(label: ArcLabel) -> Self {
        ParametricArc { label, points: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Total polyline length.
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1].x - w[0].x).hypot(w[1].y - w[0].y)).sum()
    }

    pub fn map(&self, label: ArcLabel, f: impl Fn(f64, f64) -> (f64, f64)) -> ParametricArc {
        let points = self
            .points
            .iter()
            .map(|p| {
                let (x, y) = f(p.x, p.y);
                ArcPoint { z: p.z, x, y }
            })
            .collect();
        ParametricArc { label, points }
    }

    /// Distance from (x, y) to the polyline.
    pub fn distance_to(&self, x: f64, y: f64) -> f64 {
        if self.points.len() == 1 {
            return (self.points[0].x - x).hypot(self.points[0].y - y);
        }
        self.points
            .windows(2)
            .map(|w| segment_distance((w[0].x, w[0].y), (w[1].x, w[1].y), (x, y)))
            .fold(f64::INFINITY, f64::min)
    }

    /// `z,x,y` rows with 17 significant digits.
    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "z,x,y")?;
        for p in &self.points {
            writeln!(out, "{:.16e},{:.16e},{:.16e}", p.z, p.x, p.y)?;
        }
        Ok(())
    }
}

pub fn segment_distance(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    (a.0 + s * dx - p.0).hypot(a.1 + s * dy - p.1)
}

/// `z,m,r` rows.
pub fn write_lines_csv(lines: &[Line], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "z,m,r")?;
    for l in lines {
        writeln!(out, "{:.16e},{:.16e},{:.16e}", l.z, l.slope, l.x_intercept)?;
    }
    Ok(())
}

/// `n` points log-spaced on [z_min, z_max].
pub fn log_grid(z_min: f64, z_max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![z_min];
    }
    let (a, b) = (z_min.ln(), z_max.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Default grid: 200 points on (1 + 1e−3, 1e4].
pub fn default_grid() -> Vec<f64> {
    log_grid(1.0 + 1e-3, 1e4, 200)
}

/// Result of a generic envelope computation.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub arc: ParametricArc,
    /// Grid points where the 2×2 system was singular.
    pub singular: Vec<TangentError>,
}

/// Envelope of a smooth family of lines A(z)x + B(z)y + C(z) = 0: solves
/// F = 0, ∂F/∂z = 0 at every grid point, with a five-point central
/// difference for ∂F/∂z.
pub fn envelope(family: impl Fn(f64) -> Result<GeneralLine, TangentError>, grid: &[f64]) -> Result<Envelope, TangentError> {
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid.first().is_some_and(|&z| z <= 1.0) {
        return Err(TangentError::OutOfRange("z grid must increase strictly inside (1, ∞)".into()));
    }
    let mut arc = ParametricArc::new(ArcLabel::Custom);
    let mut singular = Vec::new();
    for &z in grid {
        let h = (1e-4 * z).max(1e-5);
        let l = family(z)?;
        let at = |k: f64| family(z + k * h);
        let (p2, p1, m1, m2) = (at(2.0)?, at(1.0)?, at(-1.0)?, at(-2.0)?);
        let d = |f: fn(&GeneralLine) -> f64| (-f(&p2) + 8.0 * f(&p1) - 8.0 * f(&m1) + f(&m2)) / (12.0 * h);
        let dl = GeneralLine::new(d(|l| l.a), d(|l| l.b), d(|l| l.c));
        match solve2(&l, &dl) {
            Some((x, y)) => arc.points.push(ArcPoint { z, x, y }),
            None => singular.push(TangentError::SingularSystem(z)),
        }
    }
    Ok(Envelope { arc, singular })
}

/// Intersection of two lines, `None` when (numerically) parallel.
pub(crate) fn solve2(l: &GeneralLine, m: &GeneralLine) -> Option<(f64, f64)> {
    let det = l.a * m.b - l.b * m.a;
    let scale = l.a.hypot(l.b) * m.a.hypot(m.b);
    if !(det.abs() > 1e-13 * scale) {
        return None;
    }
    Some(((l.b * m.c - l.c * m.b) / det, (l.c * m.a - l.a * m.c) / det))
}
