//! Integral lattices given by Gram matrices: unit splitting, root-lattice
//! classification, explicit `s`-integral embeddings, a generic exact
//! decomposer, full/reduced conversions for Hoffman graphs and end-to-end
//! graph certification.

mod certify;
mod classify;
mod convert;
mod generic;
mod models;
mod reduce;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactmat::{dot, psd_check_int, IntSymMatrix, MatrixError};
use crate::hoffman::HoffmanError;

pub use certify::{certify_gram, certify_graph, Certification, CertifyOptions, CertifyRoute, Verdict};
pub use classify::{classify_component, component_isometry, standard_embedding, Family, RootComponent};
pub use convert::{clique_extract, clique_lift, convert_reduced_full, full_gram, reduced_gram, Direction};
pub use generic::{decompose_generic, GenericOutcome, GenericParams};
pub use models::{e8_frame_vectors, root_system};
pub use reduce::{reduce_gram, ComponentBlock, LogEntry, Reduction};

#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    #[error("Gram matrix is not positive semidefinite (failure at index {index:?})")]
    NotPsd { index: Option<usize> },
    #[error("generator {index} has norm {norm}; only norms 0, 1, 2 are supported")]
    NotNormBounded { index: usize, norm: i64 },
    #[error("component of rank {rank} and discriminant {disc} is not an irreducible root lattice")]
    NotRootLattice { rank: usize, disc: String },
    #[error("component is not connected or has a generator of norm other than 2")]
    NotComponent,
    #[error("{family} is not {s}-integrable")]
    Unrepresentable { family: Family, s: u64 },
    #[error("no {family} embedding is constructed at scale {s}")]
    NoConstruction { family: Family, s: u64 },
    #[error("no isometric assignment of roots found for {family}")]
    IsometryNotFound { family: Family },
    #[error("certificate mismatch at ({i},{j}): got {got}, expected {expected}")]
    Verification { i: usize, j: usize, got: i64, expected: i64 },
    #[error("certificate has {got} columns, Gram has order {expected}")]
    ColumnCount { got: usize, expected: usize },
    #[error("column {col} has length {len}, expected {dim}")]
    RaggedColumns { col: usize, len: usize, dim: usize },
    #[error("scale must be positive")]
    ZeroScale,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("clique extraction failed: {0}")]
    ExtractionFailed(String),
    #[error("graph has smallest eigenvalue below -3")]
    OutOfScope,
    #[error("graph is not connected")]
    Disconnected,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Hoffman(#[from] HoffmanError),
}

/// PSD Gram matrix of a generating set, with a note on where it came from.
#[derive(Clone, Debug)]
pub struct GramLattice {
    pub gram: IntSymMatrix,
    pub provenance: String,
}

impl GramLattice {
    pub fn new(gram: IntSymMatrix, provenance: impl Into<String>) -> Result<Self, LatticeError> {
        let v = psd_check_int(&gram, 0);
        if !v.is_psd {
            return Err(LatticeError::NotPsd { index: v.failure_index });
        }
        Ok(GramLattice { gram, provenance: provenance.into() })
    }

    pub fn order(&self) -> usize {
        self.gram.order()
    }
}

/// Integer matrix `Z` (stored by columns) with `ZᵀZ = s·Gram`; the lattice
/// vectors are the columns divided by `√s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralDecomposition {
    pub scale: u64,
    pub ambient_dim: usize,
    pub columns: Vec<Vec<i64>>,
}

impl IntegralDecomposition {
    /// Builds and verifies `ZᵀZ = scale·gram` exactly.
    pub fn new(scale: u64, columns: Vec<Vec<i64>>, gram: &IntSymMatrix) -> Result<Self, LatticeError> {
        let ambient_dim = columns.first().map_or(0, |c| c.len());
        let d = IntegralDecomposition { scale, ambient_dim, columns };
        d.verify(gram)?;
        Ok(d)
    }

    pub fn verify(&self, gram: &IntSymMatrix) -> Result<(), LatticeError> {
        if self.scale == 0 {
            return Err(LatticeError::ZeroScale);
        }
        if self.columns.len() != gram.order() {
            return Err(LatticeError::ColumnCount { got: self.columns.len(), expected: gram.order() });
        }
        for (col, c) in self.columns.iter().enumerate() {
            if c.len() != self.ambient_dim {
                return Err(LatticeError::RaggedColumns { col, len: c.len(), dim: self.ambient_dim });
            }
        }
        let s = self.scale as i64;
        for i in 0..self.columns.len() {
            for j in i..self.columns.len() {
                let got = dot(&self.columns[i], &self.columns[j]);
                let expected = s * gram.get(i, j);
                if got != expected {
                    return Err(LatticeError::Verification { i, j, got, expected });
                }
            }
        }
        Ok(())
    }

    /// Drops coordinates that vanish on every column.
    pub fn compact(mut self) -> Self {
        let keep: Vec<usize> = (0..self.ambient_dim).filter(|&r| self.columns.iter().any(|c| c[r] != 0)).collect();
        for c in self.columns.iter_mut() {
            *c = keep.iter().map(|&r| c[r]).collect();
        }
        self.ambient_dim = keep.len();
        self
    }

    /// `ZᵀZ / s` as a matrix, without a reference Gram.
    pub fn gram(&self) -> Result<IntSymMatrix, LatticeError> {
        let s = self.scale as i64;
        Ok(IntSymMatrix::from_fn(self.columns.len(), |i, j| dot(&self.columns[i], &self.columns[j]) / s)?)
    }
}

impl fmt::Display for IntegralDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scale {} dim {} columns {}", self.scale, self.ambient_dim, self.columns.len())?;
        for r in 0..self.ambient_dim {
            let row: Vec<String> = self.columns.iter().map(|c| c[r].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Nonzero `a ≥ b ≥ …` with `Σ a² = s` and as few terms as possible (at most four).
pub fn sum_of_squares(s: u64) -> Vec<i64> {
    assert!(s > 0);
    for terms in 1..=4usize {
        let mut parts = Vec::new();
        if squares_into(s, terms, s.isqrt(), &mut parts) {
            return parts.into_iter().map(|p| p as i64).collect();
        }
    }
    unreachable!("every positive integer is a sum of four squares")
}

fn squares_into(s: u64, terms: usize, max: u64, parts: &mut Vec<u64>) -> bool {
    if s == 0 {
        return true;
    }
    if terms == 0 {
        return false;
    }
    let mut a = max.min(s.isqrt());
    while a >= 1 {
        parts.push(a);
        if squares_into(s - a * a, terms - 1, a, parts) {
            return true;
        }
        parts.pop();
        a -= 1;
    }
    false
}

/// Replaces every column `v` by the stack `(a₁v, a₂v, …)` for `Σ aₖ² = factor`,
/// multiplying the scale by `factor`.
pub fn scale_up(d: &IntegralDecomposition, factor: u64) -> IntegralDecomposition {
    let parts = sum_of_squares(factor);
    let columns = d
        .columns
        .iter()
        .map(|c| parts.iter().flat_map(|&a| c.iter().map(move |&x| a * x)).collect())
        .collect();
    IntegralDecomposition { scale: d.scale * factor, ambient_dim: d.ambient_dim * parts.len(), columns }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares() {
        for s in 1..200u64 {
            let p = sum_of_squares(s);
            assert_eq!(p.iter().map(|a| (a * a) as u64).sum::<u64>(), s);
            assert!(p.len() <= 4 && p.iter().all(|&a| a > 0));
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
        assert_eq!(sum_of_squares(2), vec![1, 1]);
        assert_eq!(sum_of_squares(4), vec![2]);
        assert_eq!(sum_of_squares(7), vec![2, 1, 1, 1]);
    }

    #[test]
    fn decomposition_verification() {
        let g = IntSymMatrix::from_rows(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let d = IntegralDecomposition::new(1, vec![vec![1, -1, 0], vec![0, 1, -1]], &g).unwrap();
        let up = scale_up(&d, 2);
        up.verify(&g).unwrap();
        assert_eq!(up.scale, 2);
        assert!(IntegralDecomposition::new(2, d.columns.clone(), &g).is_err());
        assert_eq!(d.clone().compact().ambient_dim, 3);
    }

    #[test]
    fn non_psd_rejected() {
        let g = IntSymMatrix::from_rows(vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert!(matches!(GramLattice::new(g, "test"), Err(LatticeError::NotPsd { .. })));
    }
}
