use num_rational::BigRational;
use num_traits::Zero;

use arctic_model::{weight_of_counts, Lattice, ModelParams};

use crate::transfer::Plan;
use crate::EnumError;

/// Sum over all 2^(internal edges) assignments, keeping the admissible ones.
/// Independent of the sweep; meant for tiny lattices only.
pub fn naive_partition_function(lat: &Lattice, params: &ModelParams) -> Result<BigRational, EnumError> {
    let internal: Vec<usize> = (0..lat.edges().len()).filter(|&k| !lat.edges()[k].is_external()).collect();
    if internal.len() > 24 {
        return Err(EnumError::TooLarge { states: 1 << internal.len().min(62) });
    }
    let mut bits = vec![false; lat.edges().len()];
    for (k, e) in lat.edges().iter().enumerate() {
        if let Some(b) = e.boundary {
            bits[k] = if e.from.is_none() { b } else { b ^ lat.is_defect(k) };
        }
    }
    let mut z = BigRational::zero();
    for mask in 0u64..(1u64 << internal.len()) {
        for (i, &k) in internal.iter().enumerate() {
            bits[k] = mask >> i & 1 == 1;
        }
        let mut counts = [0usize; 6];
        let mut ok = true;
        for v in 0..lat.vertices().len() {
            match lat.classify(&bits, v) {
                Ok(t) => counts[t as usize] += 1,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            z += weight_of_counts(&counts, params);
        }
    }
    Ok(z)
}

/// Every configuration, as from-end edge values, by depth-first sweep.
/// Fails with `TooLarge` past `limit` configurations.
pub fn all_configurations(lat: &Lattice, limit: usize) -> Result<Vec<Vec<bool>>, EnumError> {
    fn go(
        plan: &Plan,
        i: usize,
        bits: u64,
        cur: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
        limit: usize,
    ) -> Result<(), EnumError> {
        if i == plan.len() {
            if out.len() >= limit {
                return Err(EnumError::TooLarge { states: out.len() + 1 });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let mut moves = Vec::with_capacity(2);
        plan.moves(i, bits, &mut moves);
        let (ne, ee) = plan.out_edges(i);
        for m in moves {
            cur[ne] = m.n;
            cur[ee] = m.e;
            go(plan, i + 1, m.bits, cur, out, limit)?;
        }
        Ok(())
    }
    let plan = Plan::new(lat)?;
    let mut cur = vec![false; lat.edges().len()];
    for (k, e) in lat.edges().iter().enumerate() {
        if e.from.is_none() {
            cur[k] = e.boundary.unwrap_or(false);
        }
    }
    let mut out = Vec::new();
    go(&plan, 0, 0, &mut cur, &mut out, limit)?;
    Ok(out)
}
