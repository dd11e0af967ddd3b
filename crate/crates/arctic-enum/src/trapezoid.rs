use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Tilings of a lozenge trapezoid with triangles at `x`, counted as
/// interlacing sequences of rows: each row below `x` has one entry fewer,
/// with `x_i ≤ y_i < x_{i+1}`.
pub fn trapezoid_tilings(x: &[i64]) -> BigInt {
    fn count(row: &[i64], memo: &mut HashMap<Vec<i64>, BigInt>) -> BigInt {
        if row.len() <= 1 {
            return BigInt::one();
        }
        if let Some(v) = memo.get(row) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut y = vec![0i64; row.len() - 1];
        fn fill(i: usize, row: &[i64], y: &mut Vec<i64>, total: &mut BigInt, memo: &mut HashMap<Vec<i64>, BigInt>) {
            if i == y.len() {
                *total += count(y, memo);
                return;
            }
            for v in row[i]..row[i + 1] {
                y[i] = v;
                fill(i + 1, row, y, total, memo);
            }
        }
        fill(0, row, &mut y, &mut total, memo);
        memo.insert(row.to_vec(), total.clone());
        total
    }
    count(x, &mut HashMap::new())
}
