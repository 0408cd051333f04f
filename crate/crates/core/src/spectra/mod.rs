//! Floating spectra, the limit block matrix `M̂(n)` with its convergence bound
//! and explicit factor witness, and the small-submatrix search for matrices
//! with diagonal entries in `{0, −1}`.

mod jacobi;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactmat::{psd_check_int, IntSymMatrix, MatrixError};

pub use jacobi::{jacobi_eigen, SymEigen};

#[derive(Debug, thiserror::Error)]
pub enum SpectraError {
    #[error("partition must split 0..{order} into disjoint parts: {detail}")]
    BadPartition { order: usize, detail: String },
    #[error("n must be at least {min}, got {got}")]
    BadN { min: usize, got: usize },
    #[error("smallest eigenvalue exceeds -1: M + I is positive definite (pivots {pivots})")]
    LambdaAboveMinusOne { pivots: String },
    #[error("diagonal entry {value} at index {index} is not 0 or -1")]
    BadDiagonal { index: usize, value: i64 },
    #[error("factor witness residual {residual:e} exceeds 1e-6")]
    WitnessResidual { residual: f64 },
    #[error("no principal submatrix of order <= {max_order} has smallest eigenvalue below -2")]
    NoSmallWitness { max_order: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Eigenvalues of `m`, ascending.
pub fn float_spectrum(m: &IntSymMatrix) -> Vec<f64> {
    jacobi_eigen(m.to_f64(), m.order(), false).values
}

pub fn lambda_min_float(m: &IntSymMatrix) -> f64 {
    float_spectrum(m)[0]
}

pub fn lambda_max_float(m: &IntSymMatrix) -> f64 {
    *float_spectrum(m).last().expect("non-empty")
}

/// Index partition `(I₁, I₂)` of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub i1: Vec<usize>,
    pub i2: Vec<usize>,
}

impl Partition {
    pub fn new(order: usize, i1: Vec<usize>, i2: Vec<usize>) -> Result<Self, SpectraError> {
        let mut seen = vec![0u8; order];
        for &i in i1.iter().chain(&i2) {
            if i >= order {
                return Err(SpectraError::BadPartition { order, detail: format!("index {i} out of range") });
            }
            seen[i] += 1;
        }
        if let Some(i) = seen.iter().position(|&c| c != 1) {
            let detail = if seen[i] == 0 { format!("index {i} missing") } else { format!("index {i} repeated") };
            return Err(SpectraError::BadPartition { order, detail });
        }
        Ok(Partition { i1, i2 })
    }

    /// `I₂` as given, `I₁` its complement in increasing order.
    pub fn from_i2(order: usize, i2: Vec<usize>) -> Result<Self, SpectraError> {
        let i1 = (0..order).filter(|i| !i2.contains(i)).collect();
        Self::new(order, i1, i2)
    }

    fn order(&self) -> usize {
        self.i1.len() + self.i2.len()
    }

    /// Indices of `M` in the block order `I₁, I₂`.
    pub fn block_order(&self) -> Vec<usize> {
        self.i1.iter().chain(&self.i2).copied().collect()
    }
}

/// The block matrix
/// `M̂(n) = [[M¹¹, M¹², O], [M²¹, M²²+J, J], [O, J, J−I]]`
/// indexed by `I₁, I₂` and `n` new indices.
pub fn build_limit_matrix(m: &IntSymMatrix, partition: &Partition, n: usize) -> Result<IntSymMatrix, SpectraError> {
    if partition.order() != m.order() {
        return Err(SpectraError::BadPartition {
            order: m.order(),
            detail: format!("partition covers {} indices", partition.order()),
        });
    }
    Partition::new(m.order(), partition.i1.clone(), partition.i2.clone())?;
    if n == 0 {
        return Err(SpectraError::BadN { min: 1, got: 0 });
    }
    let idx = partition.block_order();
    let a = partition.i1.len();
    let b = partition.i2.len();
    let base = a + b;
    let block = |i: usize| -> u8 {
        if i < a {
            1
        } else if i < base {
            2
        } else {
            3
        }
    };
    Ok(IntSymMatrix::from_fn(base + n, |i, j| match (block(i), block(j)) {
        (1 | 2, 1 | 2) => m.get(idx[i], idx[j]) + i64::from(block(i) == 2 && block(j) == 2),
        (1, 3) | (3, 1) => 0,
        (2, 3) | (3, 2) => 1,
        _ => i64::from(i != j),
    })?)
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub n_values: Vec<usize>,
    pub mu: Vec<f64>,
    pub lambda_min_m: f64,
    /// `λmin(M) − [μₙ − (−μₙ−1)|I₂|/(n−μₙ−1)]` for `n ≥ 2`, in `n_values` order.
    pub bound_gaps: Vec<f64>,
    pub monotone: bool,
    pub lower_bound: bool,
    pub convergence_bound: bool,
}

pub const MONOTONE_TOL: f64 = 1e-9;
pub const BOUND_TOL: f64 = 1e-8;

fn ensure_lambda_at_most_minus_one(m: &IntSymMatrix) -> Result<(), SpectraError> {
    let v = psd_check_int(m, 1);
    if v.is_psd && !v.is_singular {
        let pivots: Vec<String> = v.pivot_trace.iter().map(|p| p.to_string()).collect();
        return Err(SpectraError::LambdaAboveMinusOne { pivots: pivots.join(",") });
    }
    Ok(())
}

/// Smallest eigenvalues `μₙ` of `M̂(n)` for `n = 1..=n_max`, checked against
/// monotonicity, the lower bound `λmin(M)`, and the convergence inequality
/// `λmin(M) ≥ μₙ − (−μₙ−1)|I₂|/(n−μₙ−1)`, which is `μₙ − ε₂²|I₂|`.
pub fn limit_report(m: &IntSymMatrix, partition: &Partition, n_max: usize) -> Result<LimitReport, SpectraError> {
    if n_max < 2 {
        return Err(SpectraError::BadN { min: 2, got: n_max });
    }
    ensure_lambda_at_most_minus_one(m)?;
    let lambda_min_m = lambda_min_float(m);
    let n_values: Vec<usize> = (1..=n_max).collect();
    let mu = n_values
        .iter()
        .map(|&n| build_limit_matrix(m, partition, n).map(|mh| lambda_min_float(&mh)))
        .collect::<Result<Vec<_>, _>>()?;
    let k2 = partition.i2.len() as f64;
    let bound_gaps: Vec<f64> = n_values
        .iter()
        .zip(&mu)
        .filter(|(&n, _)| n >= 2)
        .map(|(&n, &mu)| lambda_min_m - (mu - (-mu - 1.0) * k2 / (n as f64 - mu - 1.0)))
        .collect();
    let monotone = mu.windows(2).all(|w| w[1] <= w[0] + MONOTONE_TOL);
    let lower_bound = mu.iter().all(|&x| x >= lambda_min_m - MONOTONE_TOL);
    let convergence_bound = bound_gaps.iter().all(|&g| g >= -BOUND_TOL);
    Ok(LimitReport { n_values, mu, lambda_min_m, bound_gaps, monotone, lower_bound, convergence_bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitWitness {
    pub n: usize,
    pub mu: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub u: Vec<f64>,
    /// Rows indexed by pairs `{i < j}` of `I₂`, columns by `I₂`; entry `δ_{ik} − δ_{jk}`.
    pub pair_matrix: Vec<Vec<i64>>,
    /// Rows of `N`; columns follow the block order `I₁, I₂`.
    pub assembled: Vec<Vec<f64>>,
    pub residual_max: f64,
}

/// The `C(k,2) × k` matrix with `BᵀB = kI − J`.
pub fn pair_matrix(k: usize) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            rows.push((0..k).map(|c| i64::from(c == i) - i64::from(c == j)).collect());
        }
    }
    rows
}

/// Explicit factor `N` with `NᵀN = M + (−μₙ + ε₂²|I₂|)·I`, assembled from a
/// factor of `M̂(n) − μₙI`.
pub fn limit_bound_witness(m: &IntSymMatrix, partition: &Partition, n: usize) -> Result<LimitWitness, SpectraError> {
    if n < 2 {
        return Err(SpectraError::BadN { min: 2, got: n });
    }
    let mh = build_limit_matrix(m, partition, n)?;
    let size = mh.order();
    let eig = jacobi_eigen(mh.to_f64(), size, true);
    let vecs = eig.vectors.expect("requested");
    let mu = eig.values[0];
    // N̂ = diag(√(λ−μ)) Vᵀ; column c of N̂ is indexed like M̂
    let nhat: Vec<Vec<f64>> = (0..size)
        .map(|k| {
            let d = eig.values[k] - mu;
            let w = if d < 1e-12 { 0.0 } else { d.sqrt() };
            (0..size).map(|c| w * vecs[c * size + k]).collect()
        })
        .collect();
    let a = partition.i1.len();
    let b = partition.i2.len();
    let nf = n as f64;
    let denom = nf - mu - 1.0;
    let eps1 = 1.0 - (nf / denom).sqrt();
    let eps2 = ((-mu - 1.0).max(0.0) / denom).sqrt();
    let scale_u = 1.0 / (nf * denom).sqrt();
    let u: Vec<f64> = nhat.iter().map(|row| row[a + b..].iter().sum::<f64>() * scale_u).collect();
    let pm = pair_matrix(b);
    let cols = a + b;
    let mut assembled: Vec<Vec<f64>> = nhat
        .iter()
        .zip(&u)
        .map(|(row, &uk)| (0..cols).map(|c| if c < a { row[c] } else { row[c] + (eps1 - 1.0) * uk }).collect())
        .collect();
    let diag = eps2 * (b as f64).sqrt();
    for i in 0..a {
        assembled.push((0..cols).map(|c| if c == i { diag } else { 0.0 }).collect());
    }
    for prow in &pm {
        assembled.push((0..cols).map(|c| if c < a { 0.0 } else { eps2 * prow[c - a] as f64 }).collect());
    }
    let idx = partition.block_order();
    let shift = -mu + eps2 * eps2 * b as f64;
    let mut residual_max: f64 = 0.0;
    for i in 0..cols {
        for j in 0..cols {
            let g: f64 = assembled.iter().map(|r| r[i] * r[j]).sum();
            let target = m.get(idx[i], idx[j]) as f64 + if i == j { shift } else { 0.0 };
            residual_max = residual_max.max((g - target).abs());
        }
    }
    if residual_max > 1e-6 {
        return Err(SpectraError::WitnessResidual { residual: residual_max });
    }
    Ok(LimitWitness { n, mu, eps1, eps2, u, pair_matrix: pm, assembled, residual_max })
}

fn subset_fails(m: &IntSymMatrix, subset: &[usize]) -> bool {
    !psd_check_int(&m.principal(subset).expect("non-empty subset"), 2).is_psd
}

fn connected(m: &IntSymMatrix, subset: &[usize]) -> bool {
    m.principal(subset).expect("non-empty subset").is_irreducible()
}

/// Advances `c` to the next increasing `k`-combination of `0..n` that keeps `c[0]` fixed.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 1 {
        i -= 1;
        if c[i] < n - (k - i) {
            c[i] += 1;
            for j in (i + 1)..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// For `M` with diagonal in `{0, −1}` and `λmin(M) < −2`, the lexicographically
/// first smallest index subset whose principal submatrix also has `λmin < −2`.
/// Returns `None` when `λmin(M) ≥ −2`.
///
/// A smallest failing subset is connected in the support graph (otherwise one
/// of its components already fails), so disconnected subsets are skipped.
pub fn small_submatrix_witness(m: &IntSymMatrix, max_order: usize) -> Result<Option<Vec<usize>>, SpectraError> {
    for i in 0..m.order() {
        let d = m.get(i, i);
        if d != 0 && d != -1 {
            return Err(SpectraError::BadDiagonal { index: i, value: d });
        }
    }
    if psd_check_int(m, 2).is_psd {
        return Ok(None);
    }
    let n = m.order();
    for k in 1..=max_order.min(n) {
        // shard by first index; each shard yields its lexicographically first hit
        let hit = (0..=(n - k)).into_par_iter().find_map_first(|first| {
            let mut c: Vec<usize> = (first..first + k).collect();
            loop {
                if connected(m, &c) && subset_fails(m, &c) {
                    return Some(c);
                }
                if !next_combination(&mut c, n) {
                    return None;
                }
            }
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Err(SpectraError::NoSmallWitness { max_order })
}
