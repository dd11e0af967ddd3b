use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::asm::{asm_count, asm_refined_or_zero};
use crate::binom::binomial_q;
use crate::lozenge::{hex_refined_n_count, macmahon};
use crate::{ExactError, ExactPolynomial};

/// Ice-point configurations on the (a,b,c)-triangoloid, A_{a+b+c} M_{a,b,c}.
pub fn triangoloid_count(a: usize, b: usize, c: usize) -> BigInt {
    asm_count(a + b + c) * macmahon(a, b, c)
}

/// Configurations whose bottom-row path turns north at column `r`,
/// Σ_s A_n(s) N_{c,b,a}(r − s).
pub fn triangoloid_refined(a: usize, b: usize, c: usize, r: usize) -> Result<BigInt, ExactError> {
    let w = a + 2 * b + c;
    if r < 1 || r > w {
        return Err(ExactError::OutOfRange(format!("r = {r} outside 1..={w}")));
    }
    let n = a + b + c;
    let mut acc = BigInt::zero();
    for s in 1..=r as i64 {
        let rest = hex_refined_n_count(c, b, a, r as i64 - s);
        if !rest.is_zero() {
            acc += asm_refined_or_zero(n, s) * rest;
        }
    }
    Ok(acc)
}

/// H_{a,b,c}^(r) from the double-binomial closed form.
pub fn triangoloid_h_closed(a: usize, b: usize, c: usize, r: usize) -> Result<BigRational, ExactError> {
    let w = a + 2 * b + c;
    if r < 1 || r > w {
        return Err(ExactError::OutOfRange(format!("r = {r} outside 1..={w}")));
    }
    let n = (a + b + c) as i64;
    let (a, b, c, r) = (a as i64, b as i64, c as i64, r as i64);
    let mut sum = BigRational::zero();
    for s in 1..=r {
        sum += binomial_q(2 * n - s - 1, n - 1)
            * binomial_q(n + s - 2, n - 1)
            * binomial_q(c + r - s - 1, c - 1)
            * binomial_q(a + b - r + s - 1, a - 1);
    }
    Ok(sum / (binomial_q(3 * n - 2, n - 1) * binomial_q(a + b + c - 1, b)))
}

/// H_{a,b,c}^(r) = A_{a,b,c}(r)/A_{a,b,c} for r = 1..a+2b+c.
pub fn triangoloid_h(a: usize, b: usize, c: usize) -> Vec<BigRational> {
    let total = BigRational::from_integer(triangoloid_count(a, b, c));
    (1..=a + 2 * b + c)
        .map(|r| BigRational::from_integer(triangoloid_refined(a, b, c, r).expect("in range")) / &total)
        .collect()
}

pub fn triangoloid_h_poly(a: usize, b: usize, c: usize) -> ExactPolynomial {
    ExactPolynomial::new(triangoloid_h(a, b, c))
}
