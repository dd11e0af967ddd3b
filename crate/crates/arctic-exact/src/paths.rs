use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use arctic_model::ModelParams;

use crate::binom::binomial;
use crate::ExactPolynomial;

/// Directed paths in an x×y box with exactly `l` north-east corners,
/// C(x, l) C(y, l).
pub fn path_corner_count(x: usize, y: usize, l: usize) -> BigInt {
    binomial(x as i64, l as i64) * binomial(y as i64, l as i64)
}

/// Σ_l C(x, l) C(y, l) ω^l.
pub fn path_weight_poly(x: usize, y: usize) -> ExactPolynomial {
    ExactPolynomial::new((0..=x.min(y)).map(|l| BigRational::from_integer(path_corner_count(x, y, l))).collect())
}

/// Weighted paths with a turn added at each end, in units of the a-weight:
/// (b/a)^(x+y+1) Σ_l C(x, l) C(y, l) (c/b)^(2l+1).
pub fn path_weight_abc(x: usize, y: usize, params: &ModelParams) -> BigRational {
    let t = &params.wb / &params.wa;
    let cb = &params.wc / &params.wb;
    let mut sum = BigRational::zero();
    for l in 0..=x.min(y) {
        sum += BigRational::from_integer(path_corner_count(x, y, l)) * Pow::pow(&cb, (2 * l + 1) as u32);
    }
    Pow::pow(&t, (x + y + 1) as u32) * sum
}
