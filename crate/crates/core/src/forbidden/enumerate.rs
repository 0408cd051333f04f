use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{mhat_check, CandidateMatrix, ForbiddenError};
use crate::exactmat::{psd_check_int, IntSymMatrix};

/// Lower triangle, row by row.
fn vectorize(m: &IntSymMatrix) -> Vec<i64> {
    let n = m.order();
    (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).map(|(i, j)| m.get(i, j)).collect()
}

struct Canon<'a> {
    m: &'a IntSymMatrix,
    /// cell index of each position
    cell_of_pos: Vec<usize>,
    cell: Vec<usize>,
    best: Option<Vec<i64>>,
    best_perm: Vec<usize>,
}

impl Canon<'_> {
    fn row(&self, perm: &[usize], v: usize) -> Vec<i64> {
        let mut r: Vec<i64> = perm.iter().map(|&u| self.m.get(v, u)).collect();
        r.push(self.m.get(v, v));
        r
    }

    fn dfs(&mut self, perm: &mut Vec<usize>, used: &mut [bool], cur: &mut Vec<i64>, state: Ordering) {
        let n = self.m.order();
        let p = perm.len();
        if p == n {
            if self.best.is_none() || state == Ordering::Less {
                self.best = Some(cur.clone());
                self.best_perm = perm.clone();
            }
            return;
        }
        let want = self.cell_of_pos[p];
        let options: Vec<(usize, Vec<i64>)> =
            (0..n).filter(|&v| !used[v] && self.cell[v] == want).map(|v| (v, self.row(perm, v))).collect();
        let min = options.iter().map(|(_, r)| r).min().expect("cell not exhausted").clone();
        let start = p * (p + 1) / 2;
        let st = match (&self.best, state) {
            (Some(b), Ordering::Equal) => min.as_slice().cmp(&b[start..start + p + 1]),
            _ => Ordering::Less,
        };
        if st == Ordering::Greater {
            return;
        }
        for (v, r) in options {
            if r != min {
                continue;
            }
            used[v] = true;
            perm.push(v);
            cur.extend_from_slice(&r);
            let next = if state == Ordering::Less || self.best.is_none() { Ordering::Less } else { st };
            self.dfs(perm, used, cur, next);
            cur.truncate(start);
            perm.pop();
            used[v] = false;
        }
    }
}

/// Representative of the simultaneous-permutation class of `m`: vertices are
/// first grouped by `(diagonal, sorted row)` and the lexicographically least
/// lower-triangle vectorization is taken over permutations inside groups.
pub fn canonical_form(m: &IntSymMatrix) -> IntSymMatrix {
    let n = m.order();
    let key = |v: usize| {
        let mut r: Vec<i64> = (0..n).filter(|&u| u != v).map(|u| m.get(v, u)).collect();
        r.sort_unstable();
        (m.get(v, v), r)
    };
    let keys: Vec<_> = (0..n).map(key).collect();
    let distinct: Vec<_> = keys.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let cell: Vec<usize> = keys.iter().map(|k| distinct.binary_search(k).expect("present")).collect();
    let mut cell_of_pos: Vec<usize> = cell.clone();
    cell_of_pos.sort_unstable();
    let mut c = Canon { m, cell_of_pos, cell, best: None, best_perm: Vec::new() };
    c.dfs(&mut Vec::with_capacity(n), &mut vec![false; n], &mut Vec::new(), Ordering::Equal);
    m.permuted(&c.best_perm)
}

#[derive(Clone, Copy, Debug)]
pub struct EnumParams {
    pub max_order: usize,
    /// Stop once an intermediate level holds more classes than this.
    pub max_classes: usize,
}

impl EnumParams {
    pub fn new(max_order: usize) -> Self {
        EnumParams { max_order, max_classes: 2_000_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    /// Accepted classes sorted by order, then vectorization.
    pub candidates: Vec<CandidateMatrix>,
    /// Candidate lists of every order up to this one are complete.
    pub complete_through: usize,
    pub complete: bool,
    /// Number of classes with `λmin ≥ −2` kept per order.
    pub level_sizes: Vec<usize>,
}

impl Enumeration {
    pub fn of_order(&self, k: usize) -> impl Iterator<Item = &CandidateMatrix> {
        self.candidates.iter().filter(move |c| c.order == k)
    }
}

pub fn enumerate_mhat(max_order: usize) -> Result<Enumeration, ForbiddenError> {
    enumerate_mhat_with(EnumParams::new(max_order))
}

enum Child {
    Keep(IntSymMatrix),
    Accept(IntSymMatrix),
}

fn extend(parent: &IntSymMatrix, out: &mut Vec<Child>) {
    let k = parent.order();
    for d in -2..=0i64 {
        let mut row = vec![0i64; k];
        extend_row(parent, d, 0, &mut row, out);
    }
}

fn extend_row(parent: &IntSymMatrix, d: i64, j: usize, row: &mut Vec<i64>, out: &mut Vec<Child>) {
    let k = parent.order();
    if j == k {
        let m = IntSymMatrix::from_fn(k + 1, |a, b| match (a == k, b == k) {
            (true, true) => d,
            (false, true) => row[a],
            (true, false) => row[b],
            _ => parent.get(a, b),
        })
        .expect("non-empty");
        // the order-k submatrix avoiding the new index is the parent
        for removed in 0..k {
            let idx: Vec<usize> = (0..=k).filter(|&v| v != removed).collect();
            if !psd_check_int(&m.principal(&idx).expect("non-empty"), 2).is_psd {
                return;
            }
        }
        if psd_check_int(&m, 2).is_psd {
            out.push(Child::Keep(canonical_form(&m)));
        } else if mhat_check(&m).is_ok() {
            out.push(Child::Accept(canonical_form(&m)));
        }
        return;
    }
    let pj = parent.get(j, j);
    for x in (pj.max(d) - 1)..=1 {
        // 2×2 principal submatrices are proper once the order reaches 3
        if k >= 2 && (pj + 2) * (d + 2) < x * x {
            continue;
        }
        row[j] = x;
        extend_row(parent, d, j + 1, row, out);
    }
    row[j] = 0;
}

/// Orderly enumeration of candidate matrices up to simultaneous permutation.
///
/// Level `k` holds the classes of order `k` whose principal submatrices all
/// have `λmin ≥ −2`; every candidate of order `k + 1` extends one of them.
pub fn enumerate_mhat_with(params: EnumParams) -> Result<Enumeration, ForbiddenError> {
    if params.max_order > 10 {
        return Err(ForbiddenError::OrderTooLarge(params.max_order));
    }
    let mut candidates: Vec<CandidateMatrix> = Vec::new();
    let mut level_sizes = Vec::new();
    if params.max_order == 0 {
        return Ok(Enumeration { candidates, complete_through: 0, complete: true, level_sizes });
    }
    for a in [-4i64, -3] {
        let m = IntSymMatrix::from_rows(vec![vec![a]])?;
        if mhat_check(&m).is_ok() {
            candidates.push(CandidateMatrix { m, order: 1 });
        }
    }
    let mut level: Vec<IntSymMatrix> = (-2..=0).map(|d| IntSymMatrix::from_rows(vec![vec![d]]).expect("1x1")).collect();
    level_sizes.push(level.len());
    let mut complete_through = 1;
    for order in 2..=params.max_order {
        if level.len() > params.max_classes {
            break;
        }
        let children: Vec<Vec<Child>> = level
            .par_iter()
            .map(|p| {
                let mut out = Vec::new();
                extend(p, &mut out);
                out
            })
            .collect();
        let mut keep: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut accept: BTreeSet<Vec<i64>> = BTreeSet::new();
        for c in children.into_iter().flatten() {
            match c {
                Child::Keep(m) => keep.insert(vectorize(&m)),
                Child::Accept(m) => accept.insert(vectorize(&m)),
            };
        }
        for v in accept {
            candidates.push(CandidateMatrix { m: unvectorize(order, &v), order });
        }
        complete_through = order;
        level = if order < params.max_order { keep.iter().map(|v| unvectorize(order, v)).collect() } else { Vec::new() };
        level_sizes.push(keep.len());
    }
    Ok(Enumeration { candidates, complete_through, complete: complete_through == params.max_order, level_sizes })
}

fn unvectorize(n: usize, v: &[i64]) -> IntSymMatrix {
    IntSymMatrix::from_fn(n, |i, j| {
        let (a, b) = if i >= j { (i, j) } else { (j, i) };
        v[a * (a + 1) / 2 + b]
    })
    .expect("non-empty")
}
