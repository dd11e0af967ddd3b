use num_rational::BigRational;
use num_traits::{Pow, Zero};

use arctic_model::ModelParams;

use crate::binom::binomial_q;
use crate::ExactError;

/// Partition function of Λ_{N,L} from the square data `z_n` and `h`
/// (the south boundary correlator H_N^(k), k = 1..N):
///
/// a^(NL) Z_N Σ_{k,l} C(k−1, l) C(L, l) t^(L−2l) (t² − 2Δt + 1)^l H_N^(k).
///
/// Returns the sum (the ratio to a^(NL) Z_N) and the absolute value.
pub fn lambda_nl_partition(
    n: usize,
    l: usize,
    params: &ModelParams,
    h: &[BigRational],
    z_n: &BigRational,
) -> Result<(BigRational, BigRational), ExactError> {
    if h.len() != n {
        return Err(ExactError::DimensionMismatch { expected: n, got: h.len() });
    }
    let t = params.t_exact();
    let gap = params.gap_exact();
    let tinv = t.recip();
    let mut ratio = BigRational::zero();
    for (k0, hk) in h.iter().enumerate() {
        for ll in 0..=l.min(k0) {
            let e = l as i64 - 2 * ll as i64;
            let tp = if e >= 0 { Pow::pow(&t, e as u32) } else { Pow::pow(&tinv, (-e) as u32) };
            ratio += binomial_q(k0 as i64, ll as i64)
                * binomial_q(l as i64, ll as i64)
                * tp
                * Pow::pow(&gap, ll as u32)
                * hk;
        }
    }
    let scale = Pow::pow(&params.wa, (n * l) as u32) * z_n;
    let abs = &ratio * scale;
    Ok((ratio, abs))
}
