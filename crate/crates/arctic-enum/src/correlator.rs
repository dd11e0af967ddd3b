use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use arctic_exact::ExactPolynomial;
use arctic_model::{Dir, DomainSpec, Lattice, ModelParams};

use crate::transfer::{budget_from_env, sweep, Observation};
use crate::EnumError;

/// Boundary side along which a refinement position is read.
///
/// * `South`: vertical edges above the bottom row, counted from the west;
///   the refinement edge is the unique thick one.
/// * `East`: horizontal edges entering the east-most column, counted from
///   the north; the unique thick one.
/// * `North`: vertical edges entering the top row, counted from the west;
///   the unique thin one.
/// * `West`: horizontal edges leaving the west-most column, counted from
///   the south; the unique thin one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    South,
    East,
    North,
    West,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelatorTable {
    pub side: Side,
    /// H(r) for r = 1..len.
    pub h: Vec<BigRational>,
    /// Σ_r H(r) z^(r−1)
    pub h_poly: ExactPolynomial,
    pub partition: BigRational,
}

pub(crate) fn observation(lat: &Lattice, side: Side) -> Observation {
    let vs = lat.vertices();
    let (ymin, ymax) = (vs.iter().map(|v| v.pos.1).min().unwrap(), vs.iter().map(|v| v.pos.1).max().unwrap());
    let (xmin, xmax) = (vs.iter().map(|v| v.pos.0).min().unwrap(), vs.iter().map(|v| v.pos.0).max().unwrap());
    let mut picked: Vec<((i32, i32), usize)> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let (x, y) = v.pos;
        let e = match side {
            Side::South if y == ymin => lat.slot_edge(i, Dir::N),
            Side::North if y == ymax => lat.slot_edge(i, Dir::S),
            Side::East if x == xmax => lat.slot_edge(i, Dir::W),
            Side::West if x == xmin => lat.slot_edge(i, Dir::E),
            _ => continue,
        };
        let order = match side {
            Side::South | Side::North => (x, 0),
            Side::East => (-y, 0),
            Side::West => (y, 0),
        };
        picked.push((order, e));
    }
    picked.sort();
    let position: HashMap<usize, u32> = picked.iter().enumerate().map(|(k, &(_, e))| (e, k as u32 + 1)).collect();
    Observation { position, target: matches!(side, Side::South | Side::East), len: picked.len() }
}

pub fn boundary_correlator_on(
    lat: &Lattice,
    params: &ModelParams,
    side: Side,
    budget: usize,
) -> Result<CorrelatorTable, EnumError> {
    let obs = observation(lat, side);
    // edges with no producing vertex cannot be tracked by the sweep
    for &e in obs.position.keys() {
        if lat.edges()[e].from.is_none() {
            return Err(EnumError::NotDomainWallType);
        }
    }
    let by_tag = sweep(lat, params, Some(&obs), budget)?;
    let mut h = vec![BigRational::zero(); obs.len];
    let mut z = BigRational::zero();
    for (tag, w) in by_tag {
        if w.is_zero() {
            continue;
        }
        if tag == 0 || tag as usize > obs.len {
            return Err(EnumError::NotDomainWallType);
        }
        z += &w;
        h[tag as usize - 1] += w;
    }
    if z.is_zero() {
        return Err(EnumError::NoValidConfiguration);
    }
    for x in h.iter_mut() {
        *x /= &z;
    }
    Ok(CorrelatorTable { side, h_poly: ExactPolynomial::new(h.clone()), h, partition: z })
}

pub fn boundary_correlator(domain: &DomainSpec, params: &ModelParams, side: Side) -> Result<CorrelatorTable, EnumError> {
    boundary_correlator_on(&domain.lattice()?, params, side, budget_from_env())
}
