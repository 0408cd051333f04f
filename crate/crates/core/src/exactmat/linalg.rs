use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntSymMatrix;

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Solves `A X = B` for square nonsingular `A`; `None` when `A` is singular.
pub fn solve(a: &RatMatrix, b: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(piv, col);
        let inv = BigRational::one() / aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..n + k].to_vec()).collect())
}

/// Coordinates of every generator in terms of the generators listed in `basis`,
/// computed from the Gram matrix alone: row `v` of the result solves
/// `Gram[basis, basis] · x = Gram[basis, v]`.
pub fn gram_coordinates(gram: &IntSymMatrix, basis: &[usize]) -> Option<RatMatrix> {
    let a: RatMatrix = basis.iter().map(|&i| basis.iter().map(|&j| rat(gram.get(i, j))).collect()).collect();
    let b: RatMatrix = basis
        .iter()
        .map(|&i| (0..gram.order()).map(|v| rat(gram.get(i, v))).collect())
        .collect();
    let x = solve(&a, &b)?;
    // transpose: one row per generator
    Some((0..gram.order()).map(|v| (0..basis.len()).map(|c| x[c][v].clone()).collect()).collect())
}

/// Least common multiple of all denominators.
pub fn common_denominator(rows: &RatMatrix) -> BigInt {
    rows.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
