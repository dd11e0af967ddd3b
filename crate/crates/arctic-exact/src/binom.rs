use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// C(n, k), zero outside 0 ≤ k ≤ n, except C(−1, −1) = 1.
///
/// The extra value keeps the refined hexagon and triangoloid formulas valid
/// when one side length is zero.
///
/// Multiplicative form: each partial product is itself a binomial, so the
/// division is exact and intermediates stay small.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n == -1 && k == -1 {
        return BigInt::one();
    }
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_q(n: i64, k: i64) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Numerator of a rational asserted to be an integer.
pub(crate) fn expect_integer(q: BigRational, what: &str) -> BigInt {
    assert!(q.is_integer(), "{what} is not an integer: {q}");
    q.to_integer()
}
