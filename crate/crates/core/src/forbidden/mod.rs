//! Minimal forbidden fat Hoffman graphs for smallest eigenvalue −3.
//!
//! Candidate matrices use the convention `M = Sp(𝔣) + I`.

mod enumerate;
mod realize;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exactmat::{lambda_min_bracket, psd_check_int, IntSymMatrix, MatrixError};
use crate::hoffman::{HoffmanError, HoffmanGraph};

pub use enumerate::{canonical_form, enumerate_mhat, enumerate_mhat_with, EnumParams, Enumeration};
pub use realize::realize_special;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForbiddenError {
    #[error("maximum order {0} exceeds 10")]
    OrderTooLarge(usize),
    #[error("Hoffman graph has smallest eigenvalue at least -3")]
    NotForbidden,
    #[error("Hoffman graph is not fat")]
    NotFat,
    #[error("invalid Hoffman graph: {0}")]
    Invalid(String),
    #[error(transparent)]
    Hoffman(#[from] HoffmanError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// First property a matrix fails, in the order they are checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Reducible,
    EntryAboveOne { i: usize, j: usize },
    PositiveDiagonal { i: usize },
    EntryBelowBound { i: usize, j: usize },
    /// `λmin(M) ≥ −2`.
    NotBelowMinusTwo,
    /// Deleting index `removed` leaves a matrix with `λmin < −2`.
    ProperSubmatrix { removed: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateMatrix {
    pub m: IntSymMatrix,
    pub order: usize,
}

/// Checks the five structural properties of `Sp(𝔣) + I` for a minimal
/// forbidden `𝔣`.
pub fn mhat_check(m: &IntSymMatrix) -> Result<(), Violation> {
    let n = m.order();
    if !m.is_irreducible() {
        return Err(Violation::Reducible);
    }
    for i in 0..n {
        if m.get(i, i) > 0 {
            return Err(Violation::PositiveDiagonal { i });
        }
        for j in (i + 1)..n {
            if m.get(i, j) > 1 {
                return Err(Violation::EntryAboveOne { i, j });
            }
            if m.get(i, j) < m.get(i, i).max(m.get(j, j)) - 1 {
                return Err(Violation::EntryBelowBound { i, j });
            }
        }
    }
    if psd_check_int(m, 2).is_psd {
        return Err(Violation::NotBelowMinusTwo);
    }
    // interlacing: order n−1 submatrices suffice
    if n > 1 {
        for removed in 0..n {
            let idx: Vec<usize> = (0..n).filter(|&k| k != removed).collect();
            if !psd_check_int(&m.principal(&idx).expect("non-empty"), 2).is_psd {
                return Err(Violation::ProperSubmatrix { removed });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Vertex indices of `f` kept in the subgraph.
    pub vertices: Vec<usize>,
    #[serde(skip)]
    pub subgraph: HoffmanGraph,
}

#[derive(Clone, Debug, Serialize)]
pub struct ForbiddenVerdict {
    pub is_minimal_forbidden: bool,
    pub witness: Option<Witness>,
}

fn below_minus_three(h: &HoffmanGraph) -> Result<bool, ForbiddenError> {
    Ok(!psd_check_int(&h.special_matrix()?, 3).is_psd)
}

/// Decides minimality among fat induced Hoffman subgraphs.
///
/// Removing fat vertices only lowers `Sp`, and principal submatrices interlace,
/// so the maximal proper fat subgraphs decide the question: all slims with one
/// fat vertex removed (when still fat), and each slim vertex removed together
/// with the fat vertices it alone was attached to.
pub fn minimal_forbidden_check(f: &HoffmanGraph) -> Result<ForbiddenVerdict, ForbiddenError> {
    let v = f.validate();
    if let Some(msg) = v.violation {
        return Err(ForbiddenError::Invalid(msg));
    }
    if !v.is_fat {
        return Err(ForbiddenError::NotFat);
    }
    if !below_minus_three(f)? {
        return Err(ForbiddenError::NotForbidden);
    }
    let slim = f.slim_vertices();
    let fat = f.fat_vertices();
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for &drop in &fat {
        let mut verts = slim.clone();
        verts.extend(fat.iter().copied().filter(|&x| x != drop));
        maximal.push(verts);
    }
    if slim.len() > 1 {
        for &drop in &slim {
            let mut verts: Vec<usize> = slim.iter().copied().filter(|&x| x != drop).collect();
            let kept: Vec<usize> = fat.iter().copied().filter(|&g| verts.iter().any(|&x| f.graph.has_edge(x, g))).collect();
            verts.extend(kept);
            maximal.push(verts);
        }
    }
    for verts in maximal {
        let sub = f.induced(&verts);
        let sv = sub.validate();
        if sv.violation.is_some() || !sv.is_fat {
            continue;
        }
        if below_minus_three(&sub)? {
            return Ok(ForbiddenVerdict { is_minimal_forbidden: false, witness: Some(Witness { vertices: verts, subgraph: sub }) });
        }
    }
    Ok(ForbiddenVerdict { is_minimal_forbidden: true, witness: None })
}

/// Certified bracket for `max λmin(Sp(𝔣))` over the given graphs.
pub fn epsilon_bracket(graphs: &[HoffmanGraph], width: &BigRational) -> Result<Option<(BigRational, BigRational)>, ForbiddenError> {
    let mut best: Option<(BigRational, BigRational)> = None;
    for h in graphs {
        let (lo, hi) = lambda_min_bracket(&h.special_matrix()?, width);
        best = Some(match best {
            None => (lo, hi),
            Some((blo, bhi)) => (blo.max(lo), bhi.max(hi)),
        });
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn mat(rows: Vec<Vec<i64>>) -> IntSymMatrix {
        IntSymMatrix::from_rows(rows).unwrap()
    }

    fn star(fats: usize) -> HoffmanGraph {
        let edges: Vec<(usize, usize)> = (1..=fats).map(|f| (0, f)).collect();
        HoffmanGraph::from_parts(1, fats, &edges).unwrap()
    }

    #[test]
    fn property_checks() {
        assert_eq!(mhat_check(&mat(vec![vec![-3]])), Ok(()));
        assert_eq!(mhat_check(&mat(vec![vec![-2, 1], vec![1, 0]])), Ok(()));
        assert_eq!(mhat_check(&mat(vec![vec![0, 1], vec![1, 0]])), Err(Violation::NotBelowMinusTwo));
        assert_eq!(mhat_check(&mat(vec![vec![-3, 0], vec![0, -3]])), Err(Violation::Reducible));
        assert_eq!(mhat_check(&mat(vec![vec![0, 2], vec![2, 0]])), Err(Violation::EntryAboveOne { i: 0, j: 1 }));
        assert_eq!(mhat_check(&mat(vec![vec![0, -2], vec![-2, 0]])), Err(Violation::EntryBelowBound { i: 0, j: 1 }));
        assert_eq!(mhat_check(&mat(vec![vec![1]])), Err(Violation::PositiveDiagonal { i: 0 }));
        assert_eq!(mhat_check(&mat(vec![vec![-3, 1], vec![1, 0]])), Err(Violation::ProperSubmatrix { removed: 1 }));
    }

    #[test]
    fn four_and_five_fat_stars() {
        let v4 = minimal_forbidden_check(&star(4)).unwrap();
        assert!(v4.is_minimal_forbidden && v4.witness.is_none());
        let v5 = minimal_forbidden_check(&star(5)).unwrap();
        assert!(!v5.is_minimal_forbidden);
        let w = v5.witness.unwrap();
        assert_eq!(w.subgraph.fat_vertices().len(), 4);
        assert_eq!(w.subgraph.special_matrix().unwrap(), mat(vec![vec![-4]]));
    }

    #[test]
    fn not_forbidden() {
        let q = crate::hoffman::canonical_fat(&crate::hoffman::Graph::from_fn(3, |_, _| true), crate::hoffman::FatMode::Q);
        assert_eq!(minimal_forbidden_check(&q).unwrap_err(), ForbiddenError::NotForbidden);
    }

    #[test]
    fn two_slims_sharing_two_fats() {
        let h = HoffmanGraph::from_parts(2, 2, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(minimal_forbidden_check(&h).unwrap().is_minimal_forbidden);
    }

    #[test]
    fn epsilon_below_minus_three() {
        let (lo, hi) = epsilon_bracket(&[star(4)], &BigRational::new(1.into(), 1024.into())).unwrap().unwrap();
        assert!(lo <= BigRational::from_integer((-4).into()) && BigRational::from_integer((-4).into()) < hi);
        assert!(epsilon_bracket(&[], &BigRational::new(1.into(), 2.into())).unwrap().is_none());
        assert!(!(hi - lo).is_zero());
    }
}
