use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binom::{binomial, binomial_q, expect_integer, factorial};
use crate::ExactError;

/// Lozenge tilings of the (a,b,c)-hexagon,
/// Π_{j<b} j!(j+a+c)! / ((j+a)!(j+c)!).
pub fn macmahon(a: usize, b: usize, c: usize) -> BigInt {
    let (a, c) = (a as u64, c as u64);
    let mut q = BigRational::one();
    for j in 0..b as u64 {
        q *= BigRational::new(factorial(j) * factorial(j + a + c), factorial(j + a) * factorial(j + c));
    }
    expect_integer(q, "M_{a,b,c}")
}

/// Tilings of a trapezoid with triangles at `x` on the long base,
/// Π_{i<j} (x_j − x_i)/(j − i).
pub fn gelfand_tsetlin(x: &[i64]) -> Result<BigInt, ExactError> {
    if x.first().is_some_and(|&v| v < 1) || x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExactError::NotStrictlyIncreasing);
    }
    Ok(gt_product(x))
}

/// The product without the range check, for translated inputs.
pub fn gt_product(x: &[i64]) -> BigInt {
    let mut q = BigRational::one();
    for j in 0..x.len() {
        for i in 0..j {
            q *= BigRational::new(BigInt::from(x[j] - x[i]), BigInt::from((j - i) as i64));
        }
    }
    expect_integer(q, "V_n(x)")
}

/// M_{a,b,c}(r)/M_{a,b,c} = C(a, r−1) C(b+c−1, c) / C(a+b+c−r, c), r = 1..a+1.
pub fn hex_refined_m_ratio(a: usize, b: usize, c: usize, r: usize) -> Result<BigRational, ExactError> {
    if r < 1 || r > a + 1 {
        return Err(ExactError::OutOfRange(format!("r = {r} outside 1..={}", a + 1)));
    }
    let (a, b, c, r) = (a as i64, b as i64, c as i64, r as i64);
    let den = binomial(a + b + c - r, c);
    if den.is_zero() {
        return Err(ExactError::OutOfRange("degenerate hexagon".into()));
    }
    Ok(binomial_q(a, r - 1) * binomial_q(b + c - 1, c) / BigRational::from_integer(den))
}

/// N_{a,b,c}(r)/M_{a,b,c} = C(a+r−1, a−1) C(b+c−r−1, c−1) / C(a+b+c−1, b), r = 0..b.
pub fn hex_refined_n(a: usize, b: usize, c: usize, r: usize) -> Result<BigRational, ExactError> {
    if r > b {
        return Err(ExactError::OutOfRange(format!("r = {r} outside 0..={b}")));
    }
    let (a, b, c, r) = (a as i64, b as i64, c as i64, r as i64);
    Ok(binomial_q(a + r - 1, a - 1) * binomial_q(b + c - r - 1, c - 1) / binomial_q(a + b + c - 1, b))
}

/// Integer refined count N_{a,b,c}(r), zero outside 0..=b.
pub fn hex_refined_n_count(a: usize, b: usize, c: usize, r: i64) -> BigInt {
    if r < 0 || r > b as i64 {
        return BigInt::zero();
    }
    let q = hex_refined_n(a, b, c, r as usize).expect("range checked") * BigRational::from_integer(macmahon(a, b, c));
    expect_integer(q, "N_{a,b,c}(r)")
}

/// Both sides of the convolution identity relating the two hexagon
/// refinements:
/// Σ_{s<r} C(a−s, a−r+1) C(c+s−1, c−1) C(a+b−s−1, b−1)
///   = C(a, r−1) C(b+c−1, c) C(a+b+c−1, a) / C(a+b+c−r, c).
/// The right side is `None` when its denominator vanishes.
pub fn identity_hex_sides(a: usize, b: usize, c: usize, r: usize) -> (BigRational, Option<BigRational>) {
    let (a, b, c, r) = (a as i64, b as i64, c as i64, r as i64);
    let mut lhs = BigRational::zero();
    for s in 0..r {
        lhs += binomial_q(a - s, a - r + 1) * binomial_q(c + s - 1, c - 1) * binomial_q(a + b - s - 1, b - 1);
    }
    let den = binomial(a + b + c - r, c);
    let rhs = (!den.is_zero()).then(|| {
        binomial_q(a, r - 1) * binomial_q(b + c - 1, c) * binomial_q(a + b + c - 1, a) / BigRational::from_integer(den)
    });
    (lhs, rhs)
}

pub fn identity_hex_check(a: usize, b: usize, c: usize, r: usize) -> bool {
    let (l, r) = identity_hex_sides(a, b, c, r);
    r.is_some_and(|r| r == l)
}
