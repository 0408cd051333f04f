use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form basis of the lattice spanned by `rows`.
///
/// Output rows are in echelon form with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`, so the result depends only on the lattice.
/// Empty input gives an empty basis.
pub fn integer_rowspace_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    assert!(rows.iter().all(|r| r.len() == width), "rows must share a length");
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for col in 0..width {
        if r == a.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column at or below r
            let best = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut done = true;
            for i in (r + 1)..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = a[r].clone();
            for i in 0..r {
                let q = a[i][col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * p;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

pub fn integer_rowspace_basis_i64(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    integer_rowspace_basis(&big)
}
