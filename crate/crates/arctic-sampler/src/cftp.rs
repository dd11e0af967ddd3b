use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_xoshiro::Xoshiro256PlusPlus;

use arctic_model::{Configuration, DomainKind, DomainSpec, Lattice, ModelParams};

use crate::height::{FaceGrid, HeightFunction};
use crate::SamplerError;

/// Samples computed side by side, one per bit of a machine word.
pub const LANES: usize = 64;

/// Largest epoch tried before giving up, in sweeps.
pub const MAX_EPOCH: u64 = 1 << 24;

/// Replayable source of update coins.
///
/// Sweep `t` (the one ending `t − 1` sweeps before time zero) always draws the
/// same words, whatever epoch it is replayed in; bit `l` of each word is the
/// coin of sample lane `l`. Each sweep's generator is keyed from ChaCha8
/// stream `t`, then produces its words with xoshiro256++.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomTape {
    pub seed: u64,
    pub block: u64,
}

impl RandomTape {
    pub fn new(seed: u64, block: u64) -> Self {
        RandomTape { seed, block }
    }

    pub fn sweep(&self, t: u64) -> Xoshiro256PlusPlus {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.block.to_le_bytes());
        key[16..24].copy_from_slice(b"arctic-6");
        let mut chacha = ChaCha8Rng::from_seed(key);
        chacha.set_stream(t);
        let mut s = [0u8; 32];
        chacha.fill_bytes(&mut s);
        Xoshiro256PlusPlus::from_seed(s)
    }
}

/// Heat-bath flip at a plaquette, for all lanes. `coin` bits set mean "up".
#[inline]
pub fn flip(state: &mut [u64], e: &[u32; 4], coin: u64) {
    let e = e.map(|k| k as usize);
    let (b, r, t, l) = (state[e[0]], state[e[1]], state[e[2]], state[e[3]]);
    let up = l & t & !b & !r;
    let down = !l & !t & b & r;
    let f = (up & coin) | (down & !coin);
    state[e[0]] ^= f;
    state[e[1]] ^= f;
    state[e[2]] ^= f;
    state[e[3]] ^= f;
}

/// The same flip on the top and bottom chains, stored side by side.
#[inline]
fn flip_pair(state: &mut [[u64; 2]], e: &[u32; 4], coin: u64) {
    let e = e.map(|k| k as usize);
    let (b, r, t, l) = (state[e[0]], state[e[1]], state[e[2]], state[e[3]]);
    let mut f = [0u64; 2];
    for k in 0..2 {
        let up = l[k] & t[k] & !b[k] & !r[k];
        let down = !l[k] & !t[k] & b[k] & r[k];
        f[k] = (up & coin) | (down & !coin);
    }
    for &i in &e {
        for k in 0..2 {
            state[i][k] ^= f[k];
        }
    }
}

/// Monotone coupling from the past on a planar grid domain.
#[derive(Clone, Debug)]
pub struct Cftp {
    pub lattice: Lattice,
    pub grid: FaceGrid,
    /// Plaquette edges, first colour class then second.
    order: Vec<[u32; 4]>,
    /// Edge words of the maximal and minimal configurations.
    start: Vec<[u64; 2]>,
}

fn broadcast(bits: &[bool]) -> Vec<u64> {
    bits.iter().map(|&b| if b { u64::MAX } else { 0 }).collect()
}

impl Cftp {
    pub fn new(domain: &DomainSpec, params: &ModelParams) -> Result<Cftp, SamplerError> {
        if !params.is_ice_point() {
            return Err(SamplerError::NonIcePoint);
        }
        if let DomainKind::Triangoloid { .. } = domain.kind {
            let lat = domain.lattice()?;
            let report = crate::monotone::glued_check(&lat)?;
            return Err(SamplerError::NotMonotone(report.summary()));
        }
        let (lattice, grid) = FaceGrid::for_domain(domain)?;
        let hi = grid.extreme(&lattice, true)?;
        let lo = grid.extreme(&lattice, false)?;
        let top = broadcast(&grid.to_config(&lattice, &hi));
        let bottom = broadcast(&grid.to_config(&lattice, &lo));
        let start = top.into_iter().zip(bottom).map(|(a, b)| [a, b]).collect();
        let mut order: Vec<[u32; 4]> = Vec::with_capacity(grid.plaquettes.len());
        for c in 0..2 {
            order.extend(grid.plaquettes.iter().filter(|p| p.colour == c).map(|p| p.edges.map(|e| e as u32)));
        }
        Ok(Cftp { lattice, grid, order, start })
    }

    pub fn max_height(&self) -> Result<HeightFunction, SamplerError> {
        self.grid.extreme(&self.lattice, true)
    }

    pub fn min_height(&self) -> Result<HeightFunction, SamplerError> {
        self.grid.extreme(&self.lattice, false)
    }

    /// One sweep over both colour classes applied to both chains.
    fn sweep(&self, tape: &RandomTape, t: u64, state: &mut [[u64; 2]]) {
        let mut rng = tape.sweep(t);
        for e in &self.order {
            flip_pair(state, e, rng.next_u64());
        }
    }

    /// Run the epoch-doubling schedule until every lane in `lanes` coalesces.
    /// Returns the lane states at time zero and the final epoch length.
    pub fn run(&self, tape: &RandomTape, lanes: u64) -> Result<(Vec<u64>, u64), SamplerError> {
        let mut epoch = 1u64;
        loop {
            let mut state = self.start.clone();
            for t in (1..=epoch).rev() {
                self.sweep(tape, t, &mut state);
            }
            let diff = state.iter().fold(0u64, |acc, w| acc | (w[0] ^ w[1]));
            if diff & lanes == 0 {
                return Ok((state.iter().map(|w| w[0]).collect(), epoch));
            }
            if epoch >= MAX_EPOCH {
                return Err(SamplerError::NoCoalescence { epoch, uncoalesced: (diff & lanes).count_ones() });
            }
            epoch *= 2;
        }
    }

    /// Configurations of the requested lanes from one block.
    pub fn block(&self, seed: u64, block: u64, count: usize) -> Result<Vec<Vec<bool>>, SamplerError> {
        assert!(count <= LANES);
        if self.order.is_empty() {
            // a single configuration, nothing to couple
            return Ok(vec![self.start.iter().map(|w| w[0] & 1 == 1).collect(); count]);
        }
        let mask = if count == LANES { u64::MAX } else { (1u64 << count) - 1 };
        let (state, _) = self.run(&RandomTape::new(seed, block), mask)?;
        Ok((0..count).map(|l| lane(&state, l)).collect())
    }

    /// `n` exact samples; sample `k` comes from lane `k % 64` of block `k / 64`.
    pub fn samples(&self, n: usize, seed: u64) -> Result<Vec<Vec<bool>>, SamplerError> {
        let blocks: Vec<(u64, usize)> =
            (0..n.div_ceil(LANES)).map(|b| (b as u64, (n - b * LANES).min(LANES))).collect();
        let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(blocks.len().max(1));
        let mut results: Vec<Option<Result<Vec<Vec<bool>>, SamplerError>>> = vec![None; blocks.len()];
        std::thread::scope(|s| {
            let chunks: Vec<_> = results.chunks_mut(blocks.len().div_ceil(threads).max(1)).collect();
            let mut start = 0;
            for chunk in chunks {
                let mine = &blocks[start..start + chunk.len()];
                start += chunk.len();
                s.spawn(move || {
                    for (slot, &(b, c)) in chunk.iter_mut().zip(mine) {
                        *slot = Some(self.block(seed, b, c));
                    }
                });
            }
        });
        let mut out = Vec::with_capacity(n);
        for r in results {
            out.extend(r.expect("every block ran")?);
        }
        Ok(out)
    }
}

fn lane(state: &[u64], l: usize) -> Vec<bool> {
    state.iter().map(|w| (w >> l) & 1 == 1).collect()
}

/// One exact uniform sample at the ice point, deterministic in `seed`.
pub fn cftp_sample(domain: &DomainSpec, params: &ModelParams, seed: u64) -> Result<Configuration, SamplerError> {
    let c = Cftp::new(domain, params)?;
    let thick = c.block(seed, 0, 1)?.pop().expect("one lane");
    Ok(Configuration::new(domain.clone(), thick))
}
