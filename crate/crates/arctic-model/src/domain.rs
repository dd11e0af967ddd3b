use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Dir, EdgeKey, Lattice, LatticeBuilder, ModelError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainKind {
    /// `n` columns by `m` rows, thick on west and north, thin on south and east.
    Rectangle { n: usize, m: usize },
    SquareDwbc { n: usize },
    /// `n` columns, `n + l` rows; thick west edges on the top `n − 1` rows and
    /// on the bottom row.
    LambdaNl { n: usize, l: usize },
    /// Counterclockwise boundary word over `N`, `E`, `S`, `W` unit steps.
    DigitallyConvex { word: String },
    /// Lozenge trapezoid: `n` triangles on the long base at `positions`.
    TrapezoidGt { n: usize, k: usize, positions: Vec<usize> },
    Triangoloid { a: usize, b: usize, c: usize },
}

/// Per-edge thickness overrides on top of the domain's default boundary,
/// keyed by doubled edge midpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryCondition {
    pub overrides: BTreeMap<String, bool>,
}

impl BoundaryCondition {
    fn encode(key: EdgeKey) -> String {
        format!("{},{}", key.0, key.1)
    }

    fn decode(s: &str) -> Option<EdgeKey> {
        let (a, b) = s.split_once(',')?;
        Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
    }

    pub fn set(&mut self, key: EdgeKey, thick: bool) {
        self.overrides.insert(Self::encode(key), thick);
    }

    pub fn iter(&self) -> impl Iterator<Item = Result<(EdgeKey, bool), ModelError>> + '_ {
        self.overrides.iter().map(|(k, &v)| {
            Self::decode(k).map(|key| (key, v)).ok_or_else(|| ModelError::InvalidDomain(format!("bad edge key {k}")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    #[serde(default)]
    pub boundary: BoundaryCondition,
}

/// Rectangle block of a triangoloid, in global column/row ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Patch {
    pub cols: (i32, i32),
    pub rows: (i32, i32),
}

impl Patch {
    pub fn contains(&self, p: (i32, i32)) -> bool {
        (self.cols.0..=self.cols.1).contains(&p.0) && (self.rows.0..=self.rows.1).contains(&p.1)
    }

    fn vertices(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        (self.rows.0..=self.rows.1).flat_map(move |s| (self.cols.0..=self.cols.1).map(move |r| (r, s)))
    }
}

/// Layout of the three patches of an (a,b,c)-triangoloid.
///
/// P1 holds `a+b` columns and `a+c` rows; P2 sits east of it with `b+c`
/// columns; P3 sits on top of P2 with `a+b` rows. The north side of P1 is
/// glued to the west side of P3 with reversed orientation, and each of these
/// seam edges carries a defect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangoloidLayout {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub patches: [Patch; 3],
}

impl TriangoloidLayout {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self, ModelError> {
        if a + b == 0 || b + c == 0 || c + a == 0 {
            return Err(ModelError::InvalidDomain("triangoloid bundles a+b, b+c, c+a must be positive".into()));
        }
        let (a, b, c) = (a as i32, b as i32, c as i32);
        let patches = [
            Patch { cols: (1, a + b), rows: (1, a + c) },
            Patch { cols: (a + b + 1, a + 2 * b + c), rows: (1, a + c) },
            Patch { cols: (a + b + 1, a + 2 * b + c), rows: (a + c + 1, 2 * a + b + c) },
        ];
        Ok(TriangoloidLayout { a: a as usize, b: b as usize, c: c as usize, patches })
    }

    fn ab(&self) -> i32 {
        (self.a + self.b) as i32
    }

    fn ac(&self) -> i32 {
        (self.a + self.c) as i32
    }

    /// Row of P3's west column glued to the top of P1 column `j`.
    pub fn seam_row(&self, j: i32) -> i32 {
        self.ac() + (self.ab() + 1 - j)
    }

    pub fn seam_key(&self, j: i32) -> EdgeKey {
        (2 * j, 2 * self.ac() + 1)
    }

    pub fn seam_keys(&self) -> Vec<EdgeKey> {
        (1..=self.ab()).map(|j| self.seam_key(j)).collect()
    }

    pub fn vertices(&self) -> Vec<(i32, i32)> {
        self.patches.iter().flat_map(|p| p.vertices().collect::<Vec<_>>()).collect()
    }

    pub fn patch_of(&self, p: (i32, i32)) -> Option<usize> {
        self.patches.iter().position(|q| q.contains(p))
    }

    /// Number of columns of the bottom row.
    pub fn south_width(&self) -> usize {
        self.a + 2 * self.b + self.c
    }
}

fn rect_lattice(cols: (i32, i32), rows: (i32, i32), bc: impl Fn((i32, i32), Dir) -> bool) -> Result<Lattice, ModelError> {
    let mut vs = Vec::new();
    for s in rows.0..=rows.1 {
        for r in cols.0..=cols.1 {
            vs.push((r, s));
        }
    }
    LatticeBuilder::new(vs).build(bc)
}

/// Thickness convention shared by all domain-wall type domains: paths enter
/// through west sides and leave through north sides.
fn dwbc(d: Dir) -> bool {
    matches!(d, Dir::W | Dir::N)
}

impl DomainSpec {
    pub fn new(kind: DomainKind) -> Self {
        DomainSpec { kind, boundary: BoundaryCondition::default() }
    }

    pub fn square(n: usize) -> Self {
        Self::new(DomainKind::SquareDwbc { n })
    }

    pub fn rectangle(n: usize, m: usize) -> Self {
        Self::new(DomainKind::Rectangle { n, m })
    }

    pub fn lambda(n: usize, l: usize) -> Self {
        Self::new(DomainKind::LambdaNl { n, l })
    }

    pub fn triangoloid(a: usize, b: usize, c: usize) -> Self {
        Self::new(DomainKind::Triangoloid { a, b, c })
    }

    pub fn digitally_convex(word: &str) -> Self {
        Self::new(DomainKind::DigitallyConvex { word: word.to_string() })
    }

    /// `n` columns, `n − 1` rows, DWBC except the `r`-th south edge is thick.
    pub fn refined_square(n: usize, r: usize) -> Result<Self, ModelError> {
        if n < 1 || r < 1 || r > n {
            return Err(ModelError::OutOfRange(format!("refinement {r} outside 1..={n}")));
        }
        let mut d = Self::rectangle(n, n - 1);
        d.boundary.set((2 * r as i32, 1), true);
        Ok(d)
    }

    pub fn with_override(mut self, key: EdgeKey, thick: bool) -> Self {
        self.boundary.set(key, thick);
        self
    }

    pub fn lattice(&self) -> Result<Lattice, ModelError> {
        let mut lat = match &self.kind {
            DomainKind::Rectangle { n, m } => {
                if *n == 0 {
                    return Err(ModelError::InvalidDomain("rectangle must have a column".into()));
                }
                rect_lattice((1, *n as i32), (1, *m as i32), |_, d| dwbc(d))?
            }
            DomainKind::SquareDwbc { n } => {
                if *n == 0 {
                    return Err(ModelError::InvalidDomain("square must be non-empty".into()));
                }
                rect_lattice((1, *n as i32), (1, *n as i32), |_, d| dwbc(d))?
            }
            DomainKind::LambdaNl { n, l } => {
                if *n == 0 {
                    return Err(ModelError::InvalidDomain("lambda domain must be non-empty".into()));
                }
                let (n, l) = (*n as i32, *l as i32);
                rect_lattice((1, n), (-l, n - 1), move |p, d| match d {
                    Dir::N => true,
                    Dir::W => p.1 >= 1 || p.1 == -l,
                    _ => false,
                })?
            }
            DomainKind::DigitallyConvex { word } => {
                let cells = convex_cells(word)?;
                let mut vs: Vec<(i32, i32)> = cells.into_iter().collect();
                vs.sort_by_key(|&(r, s)| (s, r));
                LatticeBuilder::new(vs).build(|_, d| dwbc(d))?
            }
            DomainKind::TrapezoidGt { .. } => {
                return Err(ModelError::UnsupportedDomain("lozenge trapezoid has no six-vertex lattice".into()))
            }
            DomainKind::Triangoloid { a, b, c } => triangoloid_lattice(&TriangoloidLayout::new(*a, *b, *c)?)?,
        };
        for item in self.boundary.iter() {
            let (key, thick) = item?;
            lat.set_boundary(key, thick)?;
        }
        self.check_invariants(&lat)?;
        Ok(lat)
    }

    fn check_invariants(&self, lat: &Lattice) -> Result<(), ModelError> {
        if let DomainKind::Triangoloid { .. } = self.kind {
            return Ok(());
        }
        if lat.defects().count() == 0 && lat.boundary_balance() != 0 {
            return Err(ModelError::NoValidConfiguration);
        }
        Ok(())
    }

    /// Check the lozenge trapezoid parameters.
    pub fn trapezoid_positions(&self) -> Result<(usize, usize, Vec<usize>), ModelError> {
        match &self.kind {
            DomainKind::TrapezoidGt { n, k, positions } => {
                if positions.len() != *n {
                    return Err(ModelError::DimensionMismatch { expected: *n, got: positions.len() });
                }
                if positions.windows(2).any(|w| w[0] >= w[1]) || positions.first().is_some_and(|&x| x < 1) {
                    return Err(ModelError::InvalidDomain("trapezoid positions must be strictly increasing from 1".into()));
                }
                if positions.last().is_some_and(|&x| x > n + k) {
                    return Err(ModelError::InvalidDomain("trapezoid position beyond the long base".into()));
                }
                Ok((*n, *k, positions.clone()))
            }
            _ => Err(ModelError::UnsupportedDomain("not a trapezoid".into())),
        }
    }
}

fn triangoloid_lattice(t: &TriangoloidLayout) -> Result<Lattice, ModelError> {
    let (ab, ac) = (t.ab(), t.ac());
    let mut b = LatticeBuilder::new(t.vertices());
    let p3_col = ab + 1;
    for j in 1..=ab {
        let row = t.seam_row(j);
        b.glue((j, ac), Dir::N, (p3_col, row), Dir::W, Some(t.seam_key(j)));
        b.defect(t.seam_key(j));
    }
    // seam faces between consecutive seam edges
    for j in 1..ab {
        let row = t.seam_row(j);
        b.face(vec![(2 * j + 1, 2 * ac), t.seam_key(j + 1), (2 * p3_col, 2 * (row - 1) + 1), t.seam_key(j)]);
    }
    // the triangular face
    b.face(vec![(2 * ab + 1, 2 * ac), (2 * p3_col, 2 * ac + 1), t.seam_key(ab)]);
    let [p1, _, p3] = t.patches;
    b.build(move |p, d| match d {
        Dir::W => p1.contains(p),
        Dir::N => p3.contains(p),
        _ => false,
    })
}

/// Cells enclosed by a counterclockwise boundary word, checked to be the
/// union of four directed staircase paths meeting at the extreme points.
pub fn convex_cells(word: &str) -> Result<BTreeSet<(i32, i32)>, ModelError> {
    let steps: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
    if steps.is_empty() {
        return Err(ModelError::InvalidDomain("empty boundary word".into()));
    }
    let (mut x, mut y) = (0i32, 0i32);
    // vertical boundary segments for scan fill: (x, y) of the lower end
    let mut verticals: Vec<(i32, i32)> = Vec::new();
    for &c in &steps {
        match c {
            'N' => {
                verticals.push((x, y));
                y += 1;
            }
            'S' => {
                y -= 1;
                verticals.push((x, y));
            }
            'E' => x += 1,
            'W' => x -= 1,
            _ => return Err(ModelError::InvalidDomain(format!("bad boundary step {c}"))),
        }
    }
    if (x, y) != (0, 0) {
        return Err(ModelError::InvalidDomain("boundary word does not close".into()));
    }
    if !is_four_path_convex(&steps) {
        return Err(ModelError::InvalidDomain("boundary word is not digitally convex".into()));
    }
    let count = |c: char| steps.iter().filter(|&&s| s == c).count();
    if count('N') != count('E') {
        return Err(ModelError::InvalidDomain("domain is not of domain-wall type (#N != #E)".into()));
    }
    let mut rows: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    for (vx, vy) in verticals {
        rows.entry(vy).or_default().push(vx);
    }
    let mut cells = BTreeSet::new();
    for (yy, mut xs) in rows {
        xs.sort_unstable();
        for pair in xs.chunks(2) {
            if pair.len() != 2 {
                return Err(ModelError::InvalidDomain("boundary word self-intersects".into()));
            }
            for cx in pair[0]..pair[1] {
                // one vertex per cell, at its north-east lattice corner
                cells.insert((cx + 1, yy + 1));
            }
        }
    }
    Ok(cells)
}

fn is_four_path_convex(steps: &[char]) -> bool {
    const BLOCKS: [[char; 2]; 4] = [['E', 'N'], ['N', 'W'], ['W', 'S'], ['S', 'E']];
    let n = steps.len();
    (0..n).any(|start| {
        let mut i = 0;
        for block in BLOCKS {
            while i < n && block.contains(&steps[(start + i) % n]) {
                i += 1;
            }
        }
        i == n
    })
}
