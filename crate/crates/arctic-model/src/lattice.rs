use std::collections::{HashMap, HashSet, VecDeque};

use crate::{Dir, ModelError, VertexType};

/// Doubled midpoint coordinates of an edge, `(2x, 2y)`.
pub type EdgeKey = (i32, i32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub key: EdgeKey,
    /// Out-slot the edge leaves from, `None` for an input external edge.
    pub from: Option<(usize, Dir)>,
    /// In-slot the edge arrives at, `None` for an output external edge.
    pub to: Option<(usize, Dir)>,
    /// Thickness seen at the external end, for external edges.
    pub boundary: Option<bool>,
}

impl Edge {
    pub fn is_external(&self) -> bool {
        self.from.is_none() || self.to.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub pos: (i32, i32),
    /// Edge indices in slot order N, E, S, W.
    pub slots: [usize; 4],
}

/// Set of defect edges. Across a defect the two half-edges carry opposite
/// thickness.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefectPattern {
    pub defects: Vec<bool>,
}

impl DefectPattern {
    pub fn empty(n_edges: usize) -> Self {
        DefectPattern { defects: vec![false; n_edges] }
    }

    pub fn count(&self) -> usize {
        self.defects.iter().filter(|&&d| d).count()
    }
}

/// A six-vertex graph: internal degree-4 vertices, edges joining an out-slot
/// to an in-slot, and external edges ending at degree-1 boundary vertices.
///
/// Vertices are stored in a sweep order in which every edge is produced
/// before it is consumed. Edges are stored sorted by `(key.1, key.0)`, which
/// for rectangular regions is row-major with horizontal edges of a row before
/// the vertical edges above it.
#[derive(Clone, Debug)]
pub struct Lattice {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    faces: Vec<Vec<usize>>,
    defects: DefectPattern,
    by_pos: HashMap<(i32, i32), usize>,
    by_key: HashMap<EdgeKey, usize>,
}

pub struct LatticeBuilder {
    vertices: Vec<(i32, i32)>,
    glue: Vec<((i32, i32), Dir, (i32, i32), Dir, Option<EdgeKey>)>,
    extra_faces: Vec<Vec<EdgeKey>>,
    defect_keys: Vec<EdgeKey>,
}

fn default_key(pos: (i32, i32), dir: Dir) -> EdgeKey {
    let (x, y) = (2 * pos.0, 2 * pos.1);
    match dir {
        Dir::N => (x, y + 1),
        Dir::E => (x + 1, y),
        Dir::S => (x, y - 1),
        Dir::W => (x - 1, y),
    }
}

fn neighbour(pos: (i32, i32), dir: Dir) -> (i32, i32) {
    match dir {
        Dir::N => (pos.0, pos.1 + 1),
        Dir::E => (pos.0 + 1, pos.1),
        Dir::S => (pos.0, pos.1 - 1),
        Dir::W => (pos.0 - 1, pos.1),
    }
}

impl LatticeBuilder {
    /// `vertices` must be listed in a valid sweep order.
    pub fn new(vertices: Vec<(i32, i32)>) -> Self {
        LatticeBuilder { vertices, glue: Vec::new(), extra_faces: Vec::new(), defect_keys: Vec::new() }
    }

    /// Join the out-slot `from.dir` to the in-slot `to.dir`, replacing the
    /// default nearest-neighbour gluing of both slots.
    pub fn glue(&mut self, from: (i32, i32), fdir: Dir, to: (i32, i32), tdir: Dir, key: Option<EdgeKey>) -> &mut Self {
        self.glue.push((from, fdir, to, tdir, key));
        self
    }

    pub fn face(&mut self, keys: Vec<EdgeKey>) -> &mut Self {
        self.extra_faces.push(keys);
        self
    }

    pub fn defect(&mut self, key: EdgeKey) -> &mut Self {
        self.defect_keys.push(key);
        self
    }

    /// Build, assigning every external edge the thickness `bc(pos, dir)` of the
    /// vertex slot it attaches to.
    pub fn build(&self, bc: impl Fn((i32, i32), Dir) -> bool) -> Result<Lattice, ModelError> {
        let mut by_pos = HashMap::new();
        for (i, &p) in self.vertices.iter().enumerate() {
            if by_pos.insert(p, i).is_some() {
                return Err(ModelError::InvalidDomain(format!("duplicate vertex {p:?}")));
            }
        }
        let mut out_link: HashMap<(usize, Dir), (usize, Dir, Option<EdgeKey>)> = HashMap::new();
        let mut in_taken: HashSet<(usize, Dir)> = HashSet::new();
        for &(f, fd, t, td, key) in &self.glue {
            let (Some(&fi), Some(&ti)) = (by_pos.get(&f), by_pos.get(&t)) else {
                return Err(ModelError::InvalidDomain(format!("glue between unknown vertices {f:?} {t:?}")));
            };
            if !fd.is_out() || td.is_out() {
                return Err(ModelError::InvalidDomain("glue must join an out-slot to an in-slot".into()));
            }
            if out_link.insert((fi, fd), (ti, td, key)).is_some() || !in_taken.insert((ti, td)) {
                return Err(ModelError::InvalidDomain("slot glued twice".into()));
            }
        }
        // nearest-neighbour gluing for the remaining slots
        for (i, &p) in self.vertices.iter().enumerate() {
            for (fd, td) in [(Dir::N, Dir::S), (Dir::E, Dir::W)] {
                if out_link.contains_key(&(i, fd)) {
                    continue;
                }
                if let Some(&j) = by_pos.get(&neighbour(p, fd)) {
                    if in_taken.insert((j, td)) {
                        out_link.insert((i, fd), (j, td, None));
                    }
                }
            }
        }

        let mut edges = Vec::new();
        for (i, &p) in self.vertices.iter().enumerate() {
            for d in Dir::ALL {
                if d.is_out() {
                    match out_link.get(&(i, d)) {
                        Some(&(j, td, key)) => edges.push(Edge {
                            key: key.unwrap_or_else(|| default_key(p, d)),
                            from: Some((i, d)),
                            to: Some((j, td)),
                            boundary: None,
                        }),
                        None => edges.push(Edge {
                            key: default_key(p, d),
                            from: Some((i, d)),
                            to: None,
                            boundary: Some(bc(p, d)),
                        }),
                    }
                } else if !in_taken.contains(&(i, d)) {
                    edges.push(Edge { key: default_key(p, d), from: None, to: Some((i, d)), boundary: Some(bc(p, d)) });
                }
            }
        }
        edges.sort_by_key(|e| (e.key.1, e.key.0));
        let mut by_key = HashMap::new();
        for (k, e) in edges.iter().enumerate() {
            if by_key.insert(e.key, k).is_some() {
                return Err(ModelError::InvalidDomain(format!("edge key collision at {:?}", e.key)));
            }
        }
        let mut slots = vec![[usize::MAX; 4]; self.vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            if let Some((v, d)) = e.from {
                slots[v][d.index()] = k;
            }
            if let Some((v, d)) = e.to {
                slots[v][d.index()] = k;
            }
        }
        let vertices: Vec<Vertex> =
            self.vertices.iter().zip(slots).map(|(&pos, slots)| Vertex { pos, slots }).collect();

        // sweep order must be topological
        for (i, v) in vertices.iter().enumerate() {
            for d in [Dir::S, Dir::W] {
                if let Some((f, _)) = edges[v.slots[d.index()]].from {
                    if f >= i {
                        return Err(ModelError::InvalidDomain(format!(
                            "sweep order consumes an edge before producing it at {:?}",
                            v.pos
                        )));
                    }
                }
            }
        }

        let mut faces = Vec::new();
        for v in &vertices {
            let e1 = &edges[v.slots[Dir::E.index()]];
            let e2 = &edges[v.slots[Dir::N.index()]];
            let (Some((u, Dir::W)), Some((x, Dir::S))) = (e1.to, e2.to) else { continue };
            let e3 = &edges[vertices[u].slots[Dir::N.index()]];
            let e4 = &edges[vertices[x].slots[Dir::E.index()]];
            if let (Some((w1, Dir::S)), Some((w2, Dir::W))) = (e3.to, e4.to) {
                if w1 == w2 {
                    faces.push(vec![
                        v.slots[Dir::E.index()],
                        vertices[u].slots[Dir::N.index()],
                        vertices[x].slots[Dir::E.index()],
                        v.slots[Dir::N.index()],
                    ]);
                }
            }
        }
        for f in &self.extra_faces {
            let mut ids = Vec::new();
            for k in f {
                ids.push(
                    *by_key.get(k).ok_or_else(|| ModelError::InvalidDomain(format!("face edge {k:?} missing")))?,
                );
            }
            faces.push(ids);
        }

        let mut defects = DefectPattern::empty(edges.len());
        for k in &self.defect_keys {
            let id = *by_key.get(k).ok_or(ModelError::UnknownEdge(*k))?;
            defects.defects[id] = true;
        }
        Ok(Lattice { vertices, edges, faces, defects, by_pos, by_key })
    }
}

impl Lattice {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Internal faces as lists of edge indices.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn defects(&self) -> &DefectPattern {
        &self.defects
    }

    pub fn vertex_at(&self, pos: (i32, i32)) -> Option<usize> {
        self.by_pos.get(&pos).copied()
    }

    pub fn edge_at(&self, key: EdgeKey) -> Option<usize> {
        self.by_key.get(&key).copied()
    }

    pub fn slot_edge(&self, v: usize, d: Dir) -> usize {
        self.vertices[v].slots[d.index()]
    }

    pub fn is_defect(&self, e: usize) -> bool {
        self.defects.defects[e]
    }

    pub fn internal_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.is_external()).count()
    }

    /// Replace the defect pattern. Every configuration weight is unchanged when
    /// the new pattern differs by gauge moves only.
    pub fn with_defects(&self, defects: DefectPattern) -> Result<Lattice, ModelError> {
        if defects.defects.len() != self.edges.len() {
            return Err(ModelError::DimensionMismatch { expected: self.edges.len(), got: defects.defects.len() });
        }
        let mut l = self.clone();
        l.defects = defects;
        Ok(l)
    }

    pub fn set_boundary(&mut self, key: EdgeKey, thick: bool) -> Result<(), ModelError> {
        let id = self.edge_at(key).ok_or(ModelError::UnknownEdge(key))?;
        let e = &mut self.edges[id];
        if !e.is_external() {
            return Err(ModelError::NotExternal(key));
        }
        e.boundary = Some(thick);
        Ok(())
    }

    /// Thickness of slot `d` of vertex `v` as seen by that vertex, given the
    /// stored from-end values `bits`.
    pub fn view(&self, bits: &[bool], v: usize, d: Dir) -> bool {
        let e = self.slot_edge(v, d);
        if d.is_out() {
            bits[e]
        } else {
            bits[e] ^ self.defects.defects[e]
        }
    }

    pub fn classify(&self, bits: &[bool], v: usize) -> Result<VertexType, ModelError> {
        VertexType::classify(
            self.view(bits, v, Dir::N),
            self.view(bits, v, Dir::E),
            self.view(bits, v, Dir::S),
            self.view(bits, v, Dir::W),
        )
    }

    /// Check ice rule everywhere and agreement with the boundary.
    pub fn validate(&self, bits: &[bool]) -> Result<(), ModelError> {
        if bits.len() != self.edges.len() {
            return Err(ModelError::DimensionMismatch { expected: self.edges.len(), got: bits.len() });
        }
        for (k, e) in self.edges.iter().enumerate() {
            if let Some(b) = e.boundary {
                let seen = if e.from.is_none() { bits[k] } else { bits[k] ^ self.defects.defects[k] };
                if seen != b {
                    return Err(ModelError::BoundaryMismatch(e.key));
                }
            }
        }
        for v in 0..self.vertices.len() {
            self.classify(bits, v)?;
        }
        Ok(())
    }

    /// Thick in-flow minus thick out-flow through the boundary, counted at the
    /// external ends. Zero is necessary for a configuration to exist when there
    /// are no defects.
    pub fn boundary_balance(&self) -> i64 {
        self.edges
            .iter()
            .filter_map(|e| match (e.from, e.boundary) {
                (None, Some(true)) => Some(1),
                (Some(_), Some(true)) => Some(-1),
                _ => None,
            })
            .sum()
    }

    /// Parity of the defects around each internal face, then the external face
    /// (whose parity is fixed by the others).
    pub fn face_parities(&self, pattern: &DefectPattern) -> Vec<u8> {
        let mut out: Vec<u8> = self
            .faces
            .iter()
            .map(|f| f.iter().filter(|&&e| pattern.defects[e]).count() as u8 % 2)
            .collect();
        let ext = out.iter().map(|&p| p as u32).sum::<u32>() % 2;
        out.push(ext as u8);
        out
    }

    /// Toggle the defect status of the four edges around an internal vertex.
    pub fn apply_gauge(&self, pattern: &DefectPattern, pos: (i32, i32)) -> Result<DefectPattern, ModelError> {
        let v = self.vertex_at(pos).ok_or(ModelError::DegreeMismatch(pos))?;
        let mut p = pattern.clone();
        for e in self.vertices[v].slots {
            p.defects[e] = !p.defects[e];
        }
        Ok(p)
    }

    /// Internal vertex set whose gauge moves turn `a` into `b`, if any.
    pub fn gauge_between(&self, a: &DefectPattern, b: &DefectPattern) -> Result<Vec<(i32, i32)>, ModelError> {
        if self.face_parities(a) != self.face_parities(b) {
            return Err(ModelError::ParityMismatch);
        }
        let diff: Vec<bool> = a.defects.iter().zip(&b.defects).map(|(x, y)| x ^ y).collect();
        let n = self.vertices.len();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            let mut component = vec![root];
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for e in self.vertices[v].slots {
                    let edge = &self.edges[e];
                    let other = match (edge.from, edge.to) {
                        (Some((f, _)), Some((t, _))) => {
                            if f == v {
                                t
                            } else {
                                f
                            }
                        }
                        _ => continue,
                    };
                    let want = sv ^ diff[e];
                    match side[other] {
                        None => {
                            side[other] = Some(want);
                            component.push(other);
                            queue.push_back(other);
                        }
                        Some(s) if s != want => return Err(ModelError::ParityMismatch),
                        _ => {}
                    }
                }
            }
            // external edges fix the global complement choice per component
            let mut ext_votes = HashSet::new();
            for &v in &component {
                for e in self.vertices[v].slots {
                    if self.edges[e].is_external() {
                        ext_votes.insert(side[v].unwrap() ^ diff[e]);
                    }
                }
            }
            match ext_votes.len() {
                0 => {}
                1 => {
                    if ext_votes.contains(&true) {
                        for &v in &component {
                            side[v] = side[v].map(|s| !s);
                        }
                    }
                }
                _ => return Err(ModelError::BoundaryDefectMismatch),
            }
        }
        Ok((0..n).filter(|&v| side[v] == Some(true)).map(|v| self.vertices[v].pos).collect())
    }
}
