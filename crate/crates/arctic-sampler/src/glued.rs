//! Sampling on the triangoloid, which has no monotone height lattice.
//!
//! Small instances are sampled exactly by transfer counting. Larger ones use
//! a face-flip chain started from an explicit configuration; the chain is
//! reversible with the uniform measure as stationary law but its output is
//! only approximately uniform.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arctic_enum::{budget_from_env, EnumError, TransferSampler};
use arctic_model::{DomainKind, DomainSpec, Lattice, TriangoloidLayout};

use crate::height::FaceGrid;
use crate::monotone::try_face_flip;
use crate::SamplerError;

/// Uniform integer below `bound` from 64-bit words, by rejection.
pub fn uniform_below(rng: &mut impl RngCore, bound: &BigInt) -> BigInt {
    let bits = bound.bits();
    let words = bits.div_ceil(64) as usize;
    loop {
        let mut x = BigInt::zero();
        for _ in 0..words {
            x = (x << 64) + BigInt::from(rng.next_u64());
        }
        let excess = words as u64 * 64 - bits;
        x >>= excess as usize;
        if &x < bound {
            return x;
        }
    }
}

/// Exact sampler by counting, when the sweep frontier fits.
pub fn transfer_sampler(lat: &Lattice) -> Result<Option<TransferSampler>, SamplerError> {
    match TransferSampler::new(lat, budget_from_env()) {
        Ok(s) => Ok(Some(s)),
        Err(EnumError::TooLarge { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn patch_config(n: usize, m: usize, overrides: &[((i32, i32), bool)]) -> Result<(Lattice, Vec<bool>), SamplerError> {
    let mut d = DomainSpec::rectangle(n, m);
    for &(k, v) in overrides {
        d = d.with_override(k, v);
    }
    let (lat, grid) = FaceGrid::for_domain(&d)?;
    let h = grid.extreme(&lat, true)?;
    let c = grid.to_config(&lat, &h);
    Ok((lat, c))
}

/// An explicit valid configuration: in P1 the top `a` rows turn north in the
/// last `a` columns and the bottom `c` rows run east; P2 passes its `c`
/// paths north in its first `c` columns; P3 routes them to the north side.
pub fn triangoloid_seed_config(layout: &TriangoloidLayout, lat: &Lattice) -> Result<Vec<bool>, SamplerError> {
    let (a, b, c) = (layout.a as i32, layout.b as i32, layout.c as i32);
    let (ab, ac, bc) = (a + b, a + c, b + c);
    let p1 = {
        let mut o = Vec::new();
        for j in 1..=b {
            o.push(((2 * j, 2 * ac + 1), false));
        }
        for s in 1..=c {
            o.push(((2 * ab + 1, 2 * s), true));
        }
        patch_config(ab as usize, ac as usize, &o)?
    };
    let p2 = {
        let mut o = Vec::new();
        for s in c + 1..=ac {
            o.push(((1, 2 * s), false));
        }
        for r in c + 1..=bc {
            o.push(((2 * r, 2 * ac + 1), false));
        }
        patch_config(bc as usize, ac as usize, &o)?
    };
    let p3 = {
        let mut o = Vec::new();
        // P3 west row s is glued to P1 column j with seam_row(j) = ac + s
        for s in 1..=ab {
            let j = ab + 1 - s;
            let p1_thick = j > b;
            o.push(((1, 2 * s), !p1_thick));
        }
        for r in 1..=c {
            o.push(((2 * r, 1), true));
        }
        patch_config(bc as usize, ab as usize, &o)?
    };
    let mut thick: Vec<bool> = lat.edges().iter().map(|e| e.from.is_none() && e.boundary == Some(true)).collect();
    for ((plat, cfg), (dx, dy)) in [(&p1, (0, 0)), (&p2, (ab, 0)), (&p3, (ab, ac))] {
        for (k, e) in plat.edges().iter().enumerate() {
            // inputs are either global boundary or set from the producing patch
            if e.from.is_none() {
                continue;
            }
            let key = (e.key.0 + 2 * dx, e.key.1 + 2 * dy);
            let id = lat.edge_at(key).ok_or(SamplerError::NoValidConfiguration)?;
            thick[id] = cfg[k];
        }
    }
    lat.validate(&thick)?;
    Ok(thick)
}

/// Random four-sided face flips, `sweeps` times the number of faces.
pub fn flip_chain(lat: &Lattice, start: Vec<bool>, sweeps: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let faces: Vec<&Vec<usize>> = lat.faces().iter().filter(|f| f.len() == 4).collect();
    let mut thick = start;
    if faces.is_empty() {
        return thick;
    }
    for _ in 0..sweeps * faces.len() {
        let f = faces[rng.random_range(0..faces.len())];
        // lazy half step keeps the chain aperiodic
        if rng.random_bool(0.5) {
            try_face_flip(lat, f, &mut thick);
        }
    }
    thick
}

/// How triangoloid samples were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GluedMethod {
    Exact,
    FlipChain { sweeps: usize },
}

/// `n` samples on a triangoloid; exact when the transfer counts fit.
pub fn triangoloid_samples(domain: &DomainSpec, n: usize, seed: u64, sweeps: usize) -> Result<(Vec<Vec<bool>>, GluedMethod), SamplerError> {
    let DomainKind::Triangoloid { a, b, c } = domain.kind else {
        return Err(SamplerError::Model(arctic_model::ModelError::UnsupportedDomain("not a triangoloid".into())));
    };
    let lat = domain.lattice()?;
    let mut out = Vec::with_capacity(n);
    if let Some(ts) = transfer_sampler(&lat)? {
        for k in 0..n {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            out.push(ts.sample(|bound| uniform_below(&mut rng, bound)));
        }
        return Ok((out, GluedMethod::Exact));
    }
    let layout = TriangoloidLayout::new(a, b, c)?;
    let start = triangoloid_seed_config(&layout, &lat)?;
    for k in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        out.push(flip_chain(&lat, start.clone(), sweeps, &mut rng));
    }
    Ok((out, GluedMethod::FlipChain { sweeps }))
}

/// Default flip-chain length: four sweeps per unit of N².
pub fn default_sweeps(domain: &DomainSpec) -> usize {
    match domain.kind {
        DomainKind::Triangoloid { a, b, c } => 4 * (a + b + c).pow(2).max(1),
        _ => 0,
    }
}
