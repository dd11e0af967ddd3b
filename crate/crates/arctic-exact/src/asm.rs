use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::binom::{binomial, binomial_q, expect_integer};
use crate::{ExactError, ExactPolynomial};

/// Number of n×n alternating sign matrices, Π_{j<n} (3j+1)!/(n+j)!.
pub fn asm_count(n: usize) -> BigInt {
    // A_{k+1}/A_k = (3k+1)! k! / ((2k)! (2k+1)!) = C(3k+1, k) / C(2k, k)
    let mut a = BigRational::one();
    for k in 1..n as i64 {
        a *= binomial_q(3 * k + 1, k) / binomial_q(2 * k, k);
    }
    expect_integer(a, "A_n")
}

/// Refined count of ASMs whose bottom-row 1 is in column `r`.
pub fn asm_refined(n: usize, r: usize) -> Result<BigInt, ExactError> {
    if n == 0 || r < 1 || r > n {
        return Err(ExactError::OutOfRange(format!("r = {r} outside 1..={n}")));
    }
    Ok(asm_refined_or_zero(n, r as i64))
}

/// As [`asm_refined`], vanishing outside the proper range.
pub fn asm_refined_or_zero(n: usize, r: i64) -> BigInt {
    if n == 0 || r < 1 || r > n as i64 {
        return BigInt::from(0);
    }
    let n = n as i64;
    let q = BigRational::from_integer(asm_count(n as usize) * binomial(2 * n - r - 1, n - 1) * binomial(n + r - 2, n - 1))
        / binomial_q(3 * n - 2, n - 1);
    expect_integer(q, "A_n(r)")
}

/// H_N^(r) = A_N(r)/A_N for r = 1..N.
pub fn asm_h(n: usize) -> Vec<BigRational> {
    let total = BigRational::from_integer(asm_count(n));
    (1..=n as i64).map(|r| BigRational::from_integer(asm_refined_or_zero(n, r)) / &total).collect()
}

/// h_N(z) = Σ_r H_N^(r) z^(r−1).
pub fn asm_h_poly(n: usize) -> ExactPolynomial {
    ExactPolynomial::new(asm_h(n))
}
