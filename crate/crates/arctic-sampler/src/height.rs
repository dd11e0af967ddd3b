use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use arctic_model::{DomainSpec, Lattice};

use crate::SamplerError;

/// Unit cell of the face grid whose four sides are internal edges. Edge
/// indices are in the order bottom, right, top, left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Plaquette {
    pub face: usize,
    pub edges: [usize; 4],
    /// Checkerboard colour; plaquettes of one colour share no edge.
    pub colour: u8,
}

/// Faces of the bounding box of a planar grid domain, widened by one on each
/// side. Face `(i, j)` is the unit cell with lower-left corner `(i, j)`.
#[derive(Clone, Debug)]
pub struct FaceGrid {
    pub origin: (i32, i32),
    pub width: usize,
    pub height: usize,
    pub plaquettes: Vec<Plaquette>,
    free: Vec<bool>,
    /// Path count H on every face that is not a plaquette.
    fixed: Vec<i32>,
}

/// Crossing between a face and its east or north neighbour.
#[derive(Clone, Copy, Debug)]
enum Crossing {
    Absent,
    External(bool),
    Internal(usize),
}

/// Height function h = 2H + i − j on the face grid, where H counts the paths
/// passing south-east of the face. Neighbouring heights differ by exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    pub origin: (i32, i32),
    pub width: usize,
    pub height: usize,
    pub h: Vec<i32>,
}

impl HeightFunction {
    pub fn at(&self, i: i32, j: i32) -> i32 {
        self.h[(i - self.origin.0) as usize + (j - self.origin.1) as usize * self.width]
    }

    /// Pointwise order.
    pub fn le(&self, other: &HeightFunction) -> bool {
        self.h.iter().zip(&other.h).all(|(a, b)| a <= b)
    }
}

impl FaceGrid {
    pub fn new(lat: &Lattice) -> Result<FaceGrid, SamplerError> {
        if lat.defects().count() > 0 {
            return Err(SamplerError::NotMonotone("domain carries defect edges".into()));
        }
        for e in lat.edges() {
            if let (Some((f, _)), Some((t, _))) = (e.from, e.to) {
                let (p, q) = (lat.vertices()[f].pos, lat.vertices()[t].pos);
                if (p.0 - q.0).abs() + (p.1 - q.1).abs() != 1 {
                    return Err(SamplerError::NotMonotone("domain is not a planar grid region".into()));
                }
            }
        }
        let vs = lat.vertices();
        let xmin = vs.iter().map(|v| v.pos.0).min().ok_or(SamplerError::NoValidConfiguration)?;
        let xmax = vs.iter().map(|v| v.pos.0).max().unwrap();
        let ymin = vs.iter().map(|v| v.pos.1).min().unwrap();
        let ymax = vs.iter().map(|v| v.pos.1).max().unwrap();
        let origin = (xmin - 1, ymin - 1);
        let width = (xmax - xmin + 2) as usize;
        let height = (ymax - ymin + 2) as usize;
        let mut grid = FaceGrid { origin, width, height, plaquettes: Vec::new(), free: vec![false; width * height], fixed: vec![0; width * height] };
        for y in 0..height {
            for x in 0..width {
                let (i, j) = (x as i32 + origin.0, y as i32 + origin.1);
                let keys = [(2 * i + 1, 2 * j), (2 * i + 2, 2 * j + 1), (2 * i + 1, 2 * j + 2), (2 * i, 2 * j + 1)];
                let ids: Vec<usize> = keys.iter().filter_map(|&k| lat.edge_at(k)).collect();
                if ids.len() == 4 && ids.iter().all(|&e| !lat.edges()[e].is_external()) {
                    let face = x + y * width;
                    grid.free[face] = true;
                    grid.plaquettes.push(Plaquette { face, edges: [ids[0], ids[1], ids[2], ids[3]], colour: ((i + j).rem_euclid(2)) as u8 });
                }
            }
        }
        grid.fixed = grid.fixed_heights(lat)?;
        Ok(grid)
    }

    pub fn for_domain(domain: &DomainSpec) -> Result<(Lattice, FaceGrid), SamplerError> {
        let lat = domain.lattice()?;
        let grid = FaceGrid::new(&lat)?;
        Ok((lat, grid))
    }

    fn index(&self, i: i32, j: i32) -> usize {
        (i - self.origin.0) as usize + (j - self.origin.1) as usize * self.width
    }

    fn coords(&self, f: usize) -> (i32, i32) {
        ((f % self.width) as i32 + self.origin.0, (f / self.width) as i32 + self.origin.1)
    }

    fn crossing(lat: &Lattice, key: (i32, i32)) -> Crossing {
        match lat.edge_at(key) {
            None => Crossing::Absent,
            Some(e) => match lat.edges()[e].boundary {
                Some(b) if lat.edges()[e].is_external() => Crossing::External(b),
                _ => Crossing::Internal(e),
            },
        }
    }

    /// Neighbours of face `f` with the crossing and the sign of the step:
    /// ΔH = −thick going east, +thick going north.
    fn neighbours(&self, lat: &Lattice, f: usize) -> Vec<(usize, Crossing, i32)> {
        let (i, j) = self.coords(f);
        let mut out = Vec::with_capacity(4);
        let (x, y) = (i - self.origin.0, j - self.origin.1);
        if x + 1 < self.width as i32 {
            out.push((self.index(i + 1, j), Self::crossing(lat, (2 * i + 2, 2 * j + 1)), -1));
        }
        if x > 0 {
            out.push((self.index(i - 1, j), Self::crossing(lat, (2 * i, 2 * j + 1)), 1));
        }
        if y + 1 < self.height as i32 {
            out.push((self.index(i, j + 1), Self::crossing(lat, (2 * i + 1, 2 * j + 2)), 1));
        }
        if y > 0 {
            out.push((self.index(i, j - 1), Self::crossing(lat, (2 * i + 1, 2 * j)), -1));
        }
        out
    }

    /// First face reached from a boundary half-edge; H is zero there.
    fn anchor(&self, lat: &Lattice) -> Option<usize> {
        (0..self.width * self.height).find(|&f| {
            !self.free[f] && self.neighbours(lat, f).iter().any(|n| matches!(n.1, Crossing::External(_)))
        })
    }

    /// H on faces off the plaquettes. Faces touching the domain are linked by
    /// boundary half-edges; the rest lie wholly outside and keep H = 0. Absent
    /// crossings are never used, since a half-edge tip inside the box would
    /// otherwise close a loop with a nonzero step.
    fn fixed_heights(&self, lat: &Lattice) -> Result<Vec<i32>, SamplerError> {
        let n = self.width * self.height;
        let mut h: Vec<Option<i32>> = vec![None; n];
        let mut queue = VecDeque::new();
        if let Some(a) = self.anchor(lat) {
            h[a] = Some(0);
            queue.push_back(a);
        }
        while let Some(f) = queue.pop_front() {
            let hf = h[f].unwrap();
            for (g, c, sign) in self.neighbours(lat, f) {
                if self.free[g] {
                    continue;
                }
                let Crossing::External(b) = c else { continue };
                let step = sign * b as i32;
                match h[g] {
                    None => {
                        h[g] = Some(hf + step);
                        queue.push_back(g);
                    }
                    Some(v) if v != hf + step => return Err(SamplerError::NoValidConfiguration),
                    Some(_) => {}
                }
            }
        }
        (0..n)
            .map(|f| {
                let touches = self.free[f] || self.neighbours(lat, f).iter().any(|c| !matches!(c.1, Crossing::Absent));
                match (self.free[f], h[f]) {
                    (true, _) => Ok(0),
                    (false, Some(v)) => Ok(v),
                    (false, None) if !touches => Ok(0),
                    (false, None) => Err(SamplerError::NotMonotone("boundary faces are not connected".into())),
                }
            })
            .collect()
    }

    fn to_h(&self, f: usize, big_h: i32) -> i32 {
        let (i, j) = self.coords(f);
        2 * big_h + i - j
    }

    /// Maximal (`top = true`) or minimal admissible height function.
    pub fn extreme(&self, lat: &Lattice, top: bool) -> Result<HeightFunction, SamplerError> {
        let n = self.width * self.height;
        let sgn = if top { 1 } else { -1 };
        // min over fixed faces of (±h_b + d(b, f)), through internal edges
        let mut best = vec![i32::MAX; n];
        let mut heap = BinaryHeap::new();
        for f in (0..n).filter(|&f| !self.free[f]) {
            let v = sgn * self.to_h(f, self.fixed[f]);
            best[f] = v;
            heap.push(Reverse((v, f)));
        }
        while let Some(Reverse((v, f))) = heap.pop() {
            if v > best[f] {
                continue;
            }
            for (g, c, _) in self.neighbours(lat, f) {
                if matches!(c, Crossing::Internal(_)) && v + 1 < best[g] {
                    best[g] = v + 1;
                    heap.push(Reverse((v + 1, g)));
                }
            }
        }
        let hf = HeightFunction { origin: self.origin, width: self.width, height: self.height, h: best.iter().map(|&v| sgn * v).collect() };
        for f in (0..n).filter(|&f| !self.free[f]) {
            if hf.h[f] != self.to_h(f, self.fixed[f]) {
                return Err(SamplerError::NoValidConfiguration);
            }
        }
        for f in 0..n {
            for (g, c, _) in self.neighbours(lat, f) {
                if matches!(c, Crossing::Internal(_)) && (hf.h[f] - hf.h[g]).abs() != 1 {
                    return Err(SamplerError::NoValidConfiguration);
                }
            }
        }
        Ok(hf)
    }

    /// Edge thicknesses, in lattice edge order, of a height function.
    pub fn to_config(&self, lat: &Lattice, hf: &HeightFunction) -> Vec<bool> {
        let mut thick = vec![false; lat.edges().len()];
        for (k, e) in lat.edges().iter().enumerate() {
            if e.from.is_none() || e.to.is_none() {
                thick[k] = e.boundary.unwrap_or(false);
            }
        }
        let big_h = |f: usize| {
            let (i, j) = self.coords(f);
            (hf.h[f] - i + j) / 2
        };
        for f in 0..self.width * self.height {
            for (g, c, sign) in self.neighbours(lat, f) {
                // one visit per crossing: towards east and north only
                if g < f {
                    continue;
                }
                if let Crossing::Internal(e) = c {
                    thick[e] = (big_h(g) - big_h(f)) * sign == 1;
                }
            }
        }
        thick
    }

    /// Height function of a configuration given as edge thicknesses.
    pub fn from_config(&self, lat: &Lattice, thick: &[bool]) -> Result<HeightFunction, SamplerError> {
        let n = self.width * self.height;
        let mut big: Vec<Option<i32>> = vec![None; n];
        let mut queue = VecDeque::new();
        if let Some(a) = self.anchor(lat) {
            big[a] = Some(0);
            queue.push_back(a);
        }
        while let Some(f) = queue.pop_front() {
            let hf = big[f].unwrap();
            for (g, c, sign) in self.neighbours(lat, f) {
                let step = match c {
                    Crossing::Absent => continue,
                    Crossing::External(b) => sign * b as i32,
                    Crossing::Internal(e) => sign * thick[e] as i32,
                };
                match big[g] {
                    None => {
                        big[g] = Some(hf + step);
                        queue.push_back(g);
                    }
                    Some(v) if v != hf + step => return Err(SamplerError::NoValidConfiguration),
                    Some(_) => {}
                }
            }
        }
        // faces wholly outside the domain
        for f in 0..n {
            if big[f].is_none() && !self.free[f] {
                big[f] = Some(self.fixed[f]);
            }
        }
        let h = (0..n).map(|f| big[f].map(|v| self.to_h(f, v)).ok_or(SamplerError::NoValidConfiguration)).collect::<Result<_, _>>()?;
        Ok(HeightFunction { origin: self.origin, width: self.width, height: self.height, h })
    }
}
