use std::collections::HashMap;

use crate::{SampleStats, SamplerError};

/// Half-width of the smoothing window.
pub const SMOOTH_RADIUS: i32 = 2;

pub type Polyline = Vec<(f64, f64)>;

/// Vertex-grid field with the domain mask.
struct Field {
    x0: i32,
    y0: i32,
    w: usize,
    h: usize,
    v: Vec<f64>,
    inside: Vec<bool>,
}

impl Field {
    fn at(&self, x: usize, y: usize) -> f64 {
        self.v[x + y * self.w]
    }
}

fn smoothed(stats: &SampleStats) -> Field {
    let xs = stats.positions.iter().map(|p| p.0);
    let ys = stats.positions.iter().map(|p| p.1);
    let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    // one ring of empty cells so that level sets close along the boundary
    let (x0, y0) = (x0 - 1, y0 - 1);
    let w = (x1 - x0 + 2) as usize;
    let h = (y1 - y0 + 2) as usize;
    let mut raw = vec![0.0; w * h];
    let mut inside = vec![false; w * h];
    for (k, d) in stats.density().into_iter().enumerate() {
        let (x, y) = stats.positions[k];
        let i = (x - x0) as usize + (y - y0) as usize * w;
        raw[i] = d;
        inside[i] = true;
    }
    let mut v = vec![0.0; w * h];
    for y in 0..h as i32 {
        for x in 0..w as i32 {
            if !inside[x as usize + y as usize * w] {
                continue;
            }
            let (mut s, mut n) = (0.0, 0usize);
            for dy in -SMOOTH_RADIUS..=SMOOTH_RADIUS {
                for dx in -SMOOTH_RADIUS..=SMOOTH_RADIUS {
                    let (xx, yy) = (x + dx, y + dy);
                    if xx < 0 || yy < 0 || xx >= w as i32 || yy >= h as i32 {
                        continue;
                    }
                    let i = xx as usize + yy as usize * w;
                    if inside[i] {
                        s += raw[i];
                        n += 1;
                    }
                }
            }
            v[x as usize + y as usize * w] = s / n as f64;
        }
    }
    Field { x0, y0, w, h, v, inside }
}

/// Level set of the smoothed W5 + W6 density at `threshold`, by marching
/// squares over the vertex grid. Vertex `(r, s)` maps to
/// `((r − r_min + 1/2)/N, (s − s_min + 1/2)/N)`, N from [`SampleStats::scale`].
pub fn frozen_boundary(stats: &SampleStats, threshold: f64) -> Result<Vec<Polyline>, SamplerError> {
    if stats.samples == 0 {
        return Err(SamplerError::EmptyStats);
    }
    let f = smoothed(stats);
    let vals: Vec<f64> = f.v.iter().zip(&f.inside).filter(|(_, &i)| i).map(|(&v, _)| v).collect();
    let (lo, hi) = vals.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if !(hi - lo > 1e-12) {
        return Err(SamplerError::DegenerateField);
    }
    let n = stats.scale();
    let xmin = stats.positions.iter().map(|p| p.0).min().unwrap_or(0);
    let ymin = stats.positions.iter().map(|p| p.1).min().unwrap_or(0);
    let to_unit = |gx: f64, gy: f64| -> (f64, f64) {
        ((gx + f.x0 as f64 - xmin as f64 + 0.5) / n, (gy + f.y0 as f64 - ymin as f64 + 0.5) / n)
    };
    // crossing points keyed by grid edge: (x, y, 0) horizontal to (x+1, y), (x, y, 1) vertical
    let mut seg: Vec<((usize, usize, u8), (usize, usize, u8))> = Vec::new();
    let mut point: HashMap<(usize, usize, u8), (f64, f64)> = HashMap::new();
    let cross = |a: f64, b: f64| (threshold - a) / (b - a);
    for y in 0..f.h - 1 {
        for x in 0..f.w - 1 {
            let c = [f.at(x, y), f.at(x + 1, y), f.at(x + 1, y + 1), f.at(x, y + 1)];
            let idx = c.iter().enumerate().fold(0u8, |m, (k, &v)| m | (((v >= threshold) as u8) << k));
            if idx == 0 || idx == 15 {
                continue;
            }
            // cell sides: 0 bottom, 1 right, 2 top, 3 left
            let side_key = |s: u8| match s {
                0 => (x, y, 0),
                1 => (x + 1, y, 1),
                2 => (x, y + 1, 0),
                _ => (x, y, 1),
            };
            let side_point = |s: u8| -> (f64, f64) {
                let (gx, gy) = match s {
                    0 => (x as f64 + cross(c[0], c[1]), y as f64),
                    1 => (x as f64 + 1.0, y as f64 + cross(c[1], c[2])),
                    2 => (x as f64 + cross(c[3], c[2]), y as f64 + 1.0),
                    _ => (x as f64, y as f64 + cross(c[0], c[3])),
                };
                to_unit(gx, gy)
            };
            let centre = c.iter().sum::<f64>() / 4.0 >= threshold;
            let pairs: &[(u8, u8)] = match idx {
                1 | 14 => &[(3, 0)],
                2 | 13 => &[(0, 1)],
                3 | 12 => &[(3, 1)],
                4 | 11 => &[(1, 2)],
                6 | 9 => &[(0, 2)],
                7 | 8 => &[(3, 2)],
                5 => {
                    if centre {
                        &[(3, 2), (0, 1)]
                    } else {
                        &[(3, 0), (1, 2)]
                    }
                }
                _ => {
                    if centre {
                        &[(3, 0), (1, 2)]
                    } else {
                        &[(3, 2), (0, 1)]
                    }
                }
            };
            for &(s1, s2) in pairs {
                let (k1, k2) = (side_key(s1), side_key(s2));
                point.entry(k1).or_insert_with(|| side_point(s1));
                point.entry(k2).or_insert_with(|| side_point(s2));
                seg.push((k1, k2));
            }
        }
    }
    Ok(chain(&seg, &point))
}

fn chain(
    seg: &[((usize, usize, u8), (usize, usize, u8))],
    point: &HashMap<(usize, usize, u8), (f64, f64)>,
) -> Vec<Polyline> {
    let mut adj: HashMap<(usize, usize, u8), Vec<usize>> = HashMap::new();
    for (i, &(a, b)) in seg.iter().enumerate() {
        adj.entry(a).or_default().push(i);
        adj.entry(b).or_default().push(i);
    }
    let mut used = vec![false; seg.len()];
    let mut out = Vec::new();
    // open chains first, starting from keys of degree one, then loops
    let mut starts: Vec<(usize, usize, u8)> = adj.iter().filter(|(_, v)| v.len() == 1).map(|(&k, _)| k).collect();
    starts.sort();
    let mut all: Vec<(usize, usize, u8)> = adj.keys().copied().collect();
    all.sort();
    starts.extend(all);
    for s in starts {
        let Some(&first) = adj[&s].iter().find(|&&i| !used[i]) else { continue };
        let mut line = vec![point[&s]];
        let (mut cur, mut i) = (s, first);
        loop {
            used[i] = true;
            let (a, b) = seg[i];
            cur = if a == cur { b } else { a };
            line.push(point[&cur]);
            match adj[&cur].iter().find(|&&j| !used[j]) {
                Some(&j) => i = j,
                None => break,
            }
        }
        out.push(line);
    }
    out
}

fn seg_dist(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let l2 = dx * dx + dy * dy;
    let t = if l2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / l2).clamp(0.0, 1.0) };
    ((p.0 - a.0 - t * dx).powi(2) + (p.1 - a.1 - t * dy).powi(2)).sqrt()
}

/// Distance from `p` to the nearest polyline.
pub fn distance_to_polylines(p: (f64, f64), lines: &[Polyline]) -> f64 {
    lines
        .iter()
        .flat_map(|l| l.windows(2).map(move |w| seg_dist(p, w[0], w[1])))
        .fold(f64::INFINITY, f64::min)
}

/// Fraction of the length of `arc` lying within `band` of `lines`.
pub fn arc_coverage(arc: &[(f64, f64)], lines: &[Polyline], band: f64) -> f64 {
    let (mut total, mut near) = (0.0, 0.0);
    for w in arc.windows(2) {
        let len = ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt();
        // subdivide long pieces so that coverage is measured along the arc
        let k = ((len / (band / 10.0)).ceil() as usize).max(1);
        for j in 0..k {
            let t = (j as f64 + 0.5) / k as f64;
            let p = (w[0].0 + t * (w[1].0 - w[0].0), w[0].1 + t * (w[1].1 - w[0].1));
            total += len / k as f64;
            if distance_to_polylines(p, lines) <= band {
                near += len / k as f64;
            }
        }
    }
    if total == 0.0 {
        0.0
    } else {
        near / total
    }
}

/// Least-squares slope dy/dx of the points with `y ≤ y_max`.
pub fn fit_slope(points: &[(f64, f64)], y_max: f64) -> Option<f64> {
    let pts: Vec<&(f64, f64)> = points.iter().filter(|p| p.1 <= y_max).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    // regress x on y: the path position is the noisy coordinate
    if sxy == 0.0 {
        return None;
    }
    Some(syy / sxy)
}
