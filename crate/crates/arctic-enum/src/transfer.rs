use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use arctic_model::{Dir, Lattice, ModelParams, VertexType};

use crate::EnumError;

/// Default cap on the number of live frontier states.
pub const DEFAULT_BUDGET: usize = 1 << 25;

/// State budget, overridable through `ARCTIC_BUDGET`.
pub fn budget_from_env() -> usize {
    std::env::var("ARCTIC_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Bit-vector of the edges produced but not yet consumed by the sweep.
///
/// For a plain row sweep this is the row of vertical edges plus the one
/// horizontal edge in progress; for glued patches it also holds pending seam
/// edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TransferState {
    pub bits: u64,
    pub width: u8,
}

#[derive(Clone, Copy, Debug)]
enum Source {
    Bit(u8),
    Const(bool),
}

#[derive(Clone, Copy, Debug)]
enum Sink {
    Bit(u8),
    /// Output external edge; the from-end value must equal this.
    Forced(bool),
}

#[derive(Clone, Debug)]
struct Step {
    s: Source,
    w: Source,
    s_defect: bool,
    w_defect: bool,
    clear: u64,
    n: Sink,
    e: Sink,
    n_edge: usize,
    e_edge: usize,
}

/// Precomputed sweep: slot assignment of frontier bits for every vertex.
#[derive(Clone, Debug)]
pub struct Plan {
    steps: Vec<Step>,
    max_width: u8,
}

impl Plan {
    pub fn new(lat: &Lattice) -> Result<Plan, EnumError> {
        let mut slot_of: HashMap<usize, u8> = HashMap::new();
        let mut free: Vec<u8> = Vec::new();
        let mut next = 0u8;
        let mut max_width = 0u8;
        let mut steps = Vec::with_capacity(lat.vertices().len());
        for v in 0..lat.vertices().len() {
            let mut clear = 0u64;
            let mut src = |d: Dir, clear: &mut u64, free: &mut Vec<u8>| -> Source {
                let e = lat.slot_edge(v, d);
                let edge = &lat.edges()[e];
                if edge.from.is_none() {
                    Source::Const(edge.boundary.expect("input edges carry a boundary value"))
                } else {
                    let b = slot_of.remove(&e).expect("sweep order is topological");
                    *clear |= 1 << b;
                    free.push(b);
                    Source::Bit(b)
                }
            };
            let s = src(Dir::S, &mut clear, &mut free);
            let w = src(Dir::W, &mut clear, &mut free);
            free.sort_unstable_by(|a, b| b.cmp(a));
            let mut sink = |d: Dir| -> Result<Sink, EnumError> {
                let e = lat.slot_edge(v, d);
                let edge = &lat.edges()[e];
                if edge.to.is_none() {
                    return Ok(Sink::Forced(edge.boundary.expect("output edges carry a boundary value") ^ lat.is_defect(e)));
                }
                let b = match free.pop() {
                    Some(b) => b,
                    None => {
                        let b = next;
                        next += 1;
                        if next > 64 {
                            return Err(EnumError::TooLarge { states: usize::MAX });
                        }
                        b
                    }
                };
                slot_of.insert(e, b);
                Ok(Sink::Bit(b))
            };
            let n = sink(Dir::N)?;
            let e = sink(Dir::E)?;
            max_width = max_width.max(slot_of.len() as u8);
            steps.push(Step {
                s,
                w,
                s_defect: lat.is_defect(lat.slot_edge(v, Dir::S)),
                w_defect: lat.is_defect(lat.slot_edge(v, Dir::W)),
                clear,
                n,
                e,
                n_edge: lat.slot_edge(v, Dir::N),
                e_edge: lat.slot_edge(v, Dir::E),
            });
        }
        Ok(Plan { steps, max_width })
    }

    pub fn max_width(&self) -> u8 {
        self.max_width
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn read(src: Source, bits: u64) -> bool {
    match src {
        Source::Bit(b) => bits >> b & 1 == 1,
        Source::Const(v) => v,
    }
}

/// One admissible local choice at a vertex.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Move {
    pub bits: u64,
    pub kind: VertexType,
    pub n: bool,
    pub e: bool,
}

impl Plan {
    pub(crate) fn moves(&self, i: usize, bits: u64, out: &mut Vec<Move>) {
        out.clear();
        let st = &self.steps[i];
        let s = read(st.s, bits) ^ st.s_defect;
        let w = read(st.w, bits) ^ st.w_defect;
        let base = bits & !st.clear;
        let choices: &[(bool, bool)] = match (s as u8) + (w as u8) {
            0 => &[(false, false)],
            2 => &[(true, true)],
            _ => &[(true, false), (false, true)],
        };
        for &(n, e) in choices {
            let mut nb = base;
            let mut ok = true;
            for (sink, v) in [(st.n, n), (st.e, e)] {
                match sink {
                    Sink::Bit(b) => nb |= (v as u64) << b,
                    Sink::Forced(f) => ok &= f == v,
                }
            }
            if ok {
                let kind = VertexType::classify(n, e, s, w).expect("conservation gives a valid vertex");
                out.push(Move { bits: nb, kind, n, e });
            }
        }
    }

    pub(crate) fn out_edges(&self, i: usize) -> (usize, usize) {
        (self.steps[i].n_edge, self.steps[i].e_edge)
    }
}

/// Observation attached to a sweep: edges on one side, of which exactly one
/// should carry `target`.
#[derive(Clone, Debug)]
pub struct Observation {
    /// Position (1-based) of each observed edge, by edge index.
    pub position: HashMap<usize, u32>,
    pub target: bool,
    pub len: usize,
}

const TAG_NONE: u32 = 0;
const TAG_BAD: u32 = u32::MAX;

/// Weighted sweep. Returns the total weight of complete configurations,
/// split by the observation tag when one is given.
pub fn sweep(
    lat: &Lattice,
    params: &ModelParams,
    obs: Option<&Observation>,
    budget: usize,
) -> Result<HashMap<u32, BigRational>, EnumError> {
    let plan = Plan::new(lat)?;
    let weights = [params.wa.clone(), params.wb.clone(), params.wc.clone()];
    let mut cur: HashMap<(u64, u32), BigRational> = HashMap::new();
    cur.insert((0, TAG_NONE), BigRational::one());
    let mut moves = Vec::new();
    for i in 0..plan.len() {
        let mut next: HashMap<(u64, u32), BigRational> = HashMap::with_capacity(cur.len() * 2);
        let (ne, ee) = plan.out_edges(i);
        let obs_n = obs.and_then(|o| o.position.get(&ne).copied());
        let obs_e = obs.and_then(|o| o.position.get(&ee).copied());
        for ((bits, tag), w) in &cur {
            plan.moves(i, *bits, &mut moves);
            for m in &moves {
                let mut t = *tag;
                if let Some(o) = obs {
                    for (p, v) in [(obs_n, m.n), (obs_e, m.e)] {
                        if let Some(p) = p {
                            if v == o.target {
                                t = if t == TAG_NONE { p } else { TAG_BAD };
                            }
                        }
                    }
                }
                let wt = w * &weights[m.kind.class() as usize];
                *next.entry((m.bits, t)).or_insert_with(BigRational::zero) += wt;
            }
        }
        if next.len() > budget {
            return Err(EnumError::TooLarge { states: next.len() });
        }
        cur = next;
    }
    let mut out: HashMap<u32, BigRational> = HashMap::new();
    for ((bits, tag), w) in cur {
        debug_assert_eq!(bits, 0, "frontier drains at the end of the sweep");
        *out.entry(tag).or_insert_with(BigRational::zero) += w;
    }
    Ok(out)
}

/// Exact sampler by forward counting and backward-weighted choice.
///
/// Stores the total completion weight from every reachable frontier state,
/// then draws each vertex type with probability proportional to the weight
/// of its completions.
pub struct TransferSampler {
    plan: Plan,
    lat: Lattice,
    /// `future[i][state]`: total count of completions from `state` before vertex `i`.
    future: Vec<HashMap<u64, BigInt>>,
}

impl TransferSampler {
    /// Uniform measure (ice point). Fails with `TooLarge` beyond `budget`.
    pub fn new(lat: &Lattice, budget: usize) -> Result<Self, EnumError> {
        let plan = Plan::new(lat)?;
        let mut layers: Vec<Vec<u64>> = vec![vec![0]];
        let mut moves = Vec::new();
        for i in 0..plan.len() {
            let mut next = std::collections::HashSet::new();
            for &b in layers.last().unwrap() {
                plan.moves(i, b, &mut moves);
                next.extend(moves.iter().map(|m| m.bits));
            }
            if next.len() > budget {
                return Err(EnumError::TooLarge { states: next.len() });
            }
            layers.push(next.into_iter().collect());
        }
        let n = plan.len();
        let mut future: Vec<HashMap<u64, BigInt>> = vec![HashMap::new(); n + 1];
        for &b in &layers[n] {
            future[n].insert(b, BigInt::one());
        }
        for i in (0..n).rev() {
            let mut here = HashMap::with_capacity(layers[i].len());
            for &b in &layers[i] {
                plan.moves(i, b, &mut moves);
                let mut tot = BigInt::zero();
                for m in &moves {
                    if let Some(f) = future[i + 1].get(&m.bits) {
                        tot += f;
                    }
                }
                if !tot.is_zero() {
                    here.insert(b, tot);
                }
            }
            future[i] = here;
        }
        if future[0].get(&0).is_none_or(|t| t.is_zero()) {
            return Err(EnumError::NoValidConfiguration);
        }
        Ok(TransferSampler { plan, lat: lat.clone(), future })
    }

    pub fn total(&self) -> &BigInt {
        &self.future[0][&0]
    }

    /// Draw one configuration. `below(bound)` must return a uniform integer
    /// in `[0, bound)`.
    pub fn sample(&self, mut below: impl FnMut(&BigInt) -> BigInt) -> Vec<bool> {
        let mut thick = vec![false; self.lat.edges().len()];
        for (k, e) in self.lat.edges().iter().enumerate() {
            if e.from.is_none() {
                thick[k] = e.boundary.unwrap_or(false);
            }
        }
        let mut bits = 0u64;
        let mut moves = Vec::new();
        for i in 0..self.plan.len() {
            self.plan.moves(i, bits, &mut moves);
            let mut x = below(&self.future[i][&bits]);
            let mut chosen = None;
            for m in &moves {
                if let Some(f) = self.future[i + 1].get(&m.bits) {
                    if &x < f {
                        chosen = Some(*m);
                        break;
                    }
                    x -= f;
                }
            }
            let m = chosen.expect("weights partition the total");
            let (ne, ee) = self.plan.out_edges(i);
            thick[ne] = m.n;
            thick[ee] = m.e;
            bits = m.bits;
        }
        thick
    }
}
