//! Standard coordinate models of the irreducible root lattices.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;

use super::classify::Family;
use crate::exactmat::linalg::{rat, solve};
use crate::exactmat::dot;

/// Eight integer vectors of norm 4 whose halved Gram matrix is a basis Gram of E8.
pub fn e8_frame_vectors() -> [[i64; 8]; 8] {
    [
        [0, 1, 1, 0, 1, 0, 0, 1],
        [0, -1, 0, 1, -1, 1, 0, 0],
        [0, 0, -1, 0, 1, -1, 1, 0],
        [1, 0, 0, -1, 0, 1, -1, 0],
        [-1, 1, 0, 0, -1, 0, 1, 0],
        [1, -1, 1, 0, 0, -1, 0, 0],
        [0, 1, -1, 1, 0, 0, -1, 0],
        [-1, -1, 0, 0, 1, 0, -1, 0],
    ]
}

/// Basis and root set of a family in its standard coordinates. Inner products
/// of the model vectors are `model_scale` times the lattice inner products.
#[derive(Clone, Debug)]
pub struct Model {
    pub family: Family,
    pub rank: usize,
    pub model_scale: u64,
    pub dim: usize,
    pub basis: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn model_a(rank: usize) -> Model {
    let dim = rank + 1;
    let basis = (0..rank).map(|i| sub(&unit(dim, i), &unit(dim, i + 1))).collect();
    let mut roots = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                roots.push(sub(&unit(dim, i), &unit(dim, j)));
            }
        }
    }
    Model { family: Family::A, rank, model_scale: 1, dim, basis, roots }
}

fn model_d(rank: usize) -> Model {
    let dim = rank;
    let mut basis = vec![add(&unit(dim, 0), &unit(dim, 1))];
    basis.extend((0..rank - 1).map(|i| sub(&unit(dim, i), &unit(dim, i + 1))));
    let mut roots = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; dim];
                v[i] = a;
                v[j] = b;
                roots.push(v);
            }
        }
    }
    Model { family: Family::D, rank, model_scale: 1, dim, basis, roots }
}

/// Norm-4 integer vectors of `Z⁸` lying in the lattice spanned by `basis`.
fn lattice_roots(basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = basis.len();
    let gram: Vec<Vec<BigRational>> = basis.iter().map(|a| basis.iter().map(|b| rat(dot(a, b))).collect()).collect();
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << 8) {
        if mask.count_ones() != 4 {
            continue;
        }
        let support: Vec<usize> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
        for signs in 0u32..16 {
            let mut v = vec![0i64; 8];
            for (t, &i) in support.iter().enumerate() {
                v[i] = if signs >> t & 1 == 1 { -1 } else { 1 };
            }
            candidates.push(v);
        }
    }
    for i in 0..8 {
        for a in [2, -2] {
            let mut v = vec![0i64; 8];
            v[i] = a;
            candidates.push(v);
        }
    }
    let mut roots: Vec<Vec<i64>> = candidates
        .into_iter()
        .filter(|v| {
            let rhs: Vec<Vec<BigRational>> = basis.iter().map(|b| vec![rat(dot(b, v))]).collect();
            let x = solve(&gram, &rhs).expect("basis is independent");
            if !x.iter().all(|c| c[0].is_integer()) {
                return false;
            }
            (0..8).all(|r| {
                let s = (0..k).fold(BigRational::zero(), |acc, i| acc + &x[i][0] * rat(basis[i][r]));
                s == rat(v[r])
            })
        })
        .collect();
    roots.sort();
    roots
}

fn model_e(rank: usize) -> Model {
    static CACHE: OnceLock<[Vec<Vec<i64>>; 3]> = OnceLock::new();
    let all = e8_frame_vectors();
    let basis_for = |r: usize| -> Vec<Vec<i64>> { all[8 - r..].iter().map(|v| v.to_vec()).collect() };
    let roots = CACHE.get_or_init(|| [lattice_roots(&basis_for(6)), lattice_roots(&basis_for(7)), lattice_roots(&basis_for(8))]);
    let family = match rank {
        6 => Family::E6,
        7 => Family::E7,
        _ => Family::E8,
    };
    Model { family, rank, model_scale: 2, dim: 8, basis: basis_for(rank), roots: roots[rank - 6].clone() }
}

/// Standard model of `family` with the given rank (ignored for E families).
pub fn root_system(family: Family, rank: usize) -> Model {
    match family {
        Family::A => model_a(rank),
        Family::D => model_d(rank),
        Family::E6 => model_e(6),
        Family::E7 => model_e(7),
        Family::E8 => model_e(8),
    }
}
