use std::collections::{HashMap, VecDeque};

use arctic_enum::all_configurations;
use arctic_model::{DomainSpec, Lattice};

use crate::cftp::flip;
use crate::height::{FaceGrid, HeightFunction};
use crate::SamplerError;

/// Cap on configurations for the exhaustive checks.
pub const CHECK_LIMIT: usize = 5000;

/// Result of the exhaustive order check on a small planar domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub configurations: usize,
    pub ordered_pairs: usize,
    /// (pair, plaquette, coin) updates tried.
    pub updates: usize,
    pub violations: usize,
    /// The formula extremes are the unique configurations without up (down)
    /// moves and bound every configuration.
    pub extremes_ok: bool,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.extremes_ok
    }
}

fn single(bits: &[bool]) -> Vec<u64> {
    bits.iter().map(|&b| b as u64).collect()
}

fn unpack(state: &[u64]) -> Vec<bool> {
    state.iter().map(|&w| w & 1 == 1).collect()
}

/// For every ordered pair h ≤ h′ of configurations, every plaquette and both
/// coins, check that one coupled update keeps h ≤ h′.
pub fn monotonicity_check(domain: &DomainSpec) -> Result<MonotonicityReport, SamplerError> {
    let (lat, grid) = FaceGrid::for_domain(domain)?;
    let configs = all_configurations(&lat, CHECK_LIMIT)?;
    let heights: Vec<HeightFunction> = configs.iter().map(|c| grid.from_config(&lat, c)).collect::<Result<_, _>>()?;
    let hi = grid.extreme(&lat, true)?;
    let lo = grid.extreme(&lat, false)?;
    let can_move = |c: &[bool], coin: u64| {
        let s = single(c);
        grid.plaquettes.iter().any(|p| {
            let mut t = s.clone();
            flip(&mut t, &p.edges.map(|e| e as u32), coin);
            t != s
        })
    };
    let no_up: Vec<usize> = (0..configs.len()).filter(|&k| !can_move(&configs[k], 1)).collect();
    let no_down: Vec<usize> = (0..configs.len()).filter(|&k| !can_move(&configs[k], 0)).collect();
    let extremes_ok = no_up.len() == 1
        && no_down.len() == 1
        && heights[no_up[0]] == hi
        && heights[no_down[0]] == lo
        && heights.iter().all(|h| lo.le(h) && h.le(&hi));

    let index: HashMap<&Vec<bool>, usize> = configs.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let mut report = MonotonicityReport { configurations: configs.len(), ordered_pairs: 0, updates: 0, violations: 0, extremes_ok };
    for (i, hx) in heights.iter().enumerate() {
        for (j, hy) in heights.iter().enumerate() {
            if !hx.le(hy) {
                continue;
            }
            report.ordered_pairs += 1;
            for p in &grid.plaquettes {
                for coin in [0u64, 1] {
                    let (mut x, mut y) = (single(&configs[i]), single(&configs[j]));
                    let e = p.edges.map(|e| e as u32);
                    flip(&mut x, &e, coin);
                    flip(&mut y, &e, coin);
                    report.updates += 1;
                    let (x, y) = (unpack(&x), unpack(&y));
                    let ok = match (index.get(&x), index.get(&y)) {
                        (Some(&a), Some(&b)) => heights[a].le(&heights[b]),
                        _ => false,
                    };
                    if !ok {
                        report.violations += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Empirical structure of a glued domain such as the triangoloid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedReport {
    pub configurations: Option<usize>,
    /// Internal faces with an odd number of sides; any one rules out a
    /// height function with unit steps.
    pub odd_faces: usize,
    pub defect_edges: usize,
    /// Whether flips at four-sided faces connect all configurations.
    pub flips_connected: Option<bool>,
}

impl GluedReport {
    pub fn has_height_function(&self) -> bool {
        self.odd_faces == 0 && self.defect_edges == 0
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "no monotone height lattice: {} odd face(s), {} defect edge(s)",
            self.odd_faces, self.defect_edges
        );
        if let (Some(n), Some(c)) = (self.configurations, self.flips_connected) {
            s += &format!("; {n} configurations, face flips {}", if c { "connected" } else { "disconnected" });
        }
        s
    }
}

/// Toggle the sides of a four-sided face if every corner stays valid.
pub fn try_face_flip(lat: &Lattice, face: &[usize], thick: &mut [bool]) -> bool {
    if face.len() != 4 {
        return false;
    }
    for &e in face {
        thick[e] = !thick[e];
    }
    let ok = face.iter().all(|&e| {
        let edge = &lat.edges()[e];
        [edge.from, edge.to].iter().flatten().all(|&(v, _)| lat.classify(thick, v).is_ok())
    });
    if !ok {
        for &e in face {
            thick[e] = !thick[e];
        }
    }
    ok
}

/// Face parity data, and flip connectivity when the domain is small enough
/// to enumerate.
pub fn glued_check(lat: &Lattice) -> Result<GluedReport, SamplerError> {
    let odd_faces = lat.faces().iter().filter(|f| f.len() % 2 == 1).count();
    let defect_edges = lat.defects().count();
    let (configurations, flips_connected) = match all_configurations(lat, CHECK_LIMIT) {
        Ok(configs) => {
            let index: HashMap<&Vec<bool>, usize> = configs.iter().enumerate().map(|(k, c)| (c, k)).collect();
            let mut seen = vec![false; configs.len()];
            let mut queue = VecDeque::new();
            if !configs.is_empty() {
                seen[0] = true;
                queue.push_back(0);
            }
            while let Some(k) = queue.pop_front() {
                for f in lat.faces() {
                    let mut c = configs[k].clone();
                    if try_face_flip(lat, f, &mut c) {
                        if let Some(&j) = index.get(&c) {
                            if !seen[j] {
                                seen[j] = true;
                                queue.push_back(j);
                            }
                        }
                    }
                }
            }
            (Some(configs.len()), Some(seen.iter().all(|&s| s)))
        }
        Err(_) => (None, None),
    };
    Ok(GluedReport { configurations, odd_faces, defect_edges, flips_connected })
}
