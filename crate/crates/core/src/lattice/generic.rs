use serde::Serialize;

use super::{GramLattice, IntegralDecomposition, LatticeError};
use crate::exactmat::psd_check_int;

#[derive(Clone, Copy, Debug)]
pub struct GenericParams {
    pub max_extra_dim: usize,
    pub node_budget: u64,
}

impl Default for GenericParams {
    fn default() -> Self {
        GenericParams { max_extra_dim: 8, node_budget: 100_000_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum GenericOutcome {
    Feasible(IntegralDecomposition),
    /// The search space within the dimension bound was exhausted.
    Infeasible { dim_bound: usize, nodes: u64 },
    Inconclusive { nodes: u64 },
}

impl GenericOutcome {
    pub fn certificate(&self) -> Option<&IntegralDecomposition> {
        match self {
            GenericOutcome::Feasible(d) => Some(d),
            _ => None,
        }
    }
}

struct Search<'a> {
    b: &'a [Vec<i64>],
    s: i64,
    order: Vec<usize>,
    dim: usize,
    cols: Vec<Vec<i64>>,
    /// suffix[p][j] = Σ_{r ≥ j} cols[p][r]²
    suffix: Vec<Vec<i64>>,
    used: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    fn place(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let c = self.order[k];
        let norm = self.s * self.b[c][c];
        let targets: Vec<i64> = self.order[..k].iter().map(|&p| self.s * self.b[c][p]).collect();
        let mut cur = vec![0i64; self.dim];
        let mut ips = vec![0i64; k];
        self.coord(k, 0, norm, &targets, &mut cur, &mut ips)
    }

    fn coord(&mut self, k: usize, j: usize, rem: i64, targets: &[i64], cur: &mut Vec<i64>, ips: &mut Vec<i64>) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return false;
        }
        if j == self.used {
            if ips.as_slice() != targets {
                return false;
            }
            let free = self.dim - self.used;
            let mut parts = Vec::new();
            return self.fresh(k, rem, free, i64::MAX, &mut parts, cur);
        }
        let bound = rem.isqrt();
        for mag in 0..=bound {
            for v in if mag == 0 { vec![0] } else { vec![mag, -mag] } {
                let left = rem - v * v;
                cur[j] = v;
                let mut ok = true;
                for p in 0..k {
                    ips[p] += v * self.cols[p][j];
                    let gap = targets[p] - ips[p];
                    if (gap as i128) * (gap as i128) > (left as i128) * (self.suffix[p][j + 1] as i128) {
                        ok = false;
                    }
                }
                if ok && self.coord(k, j + 1, left, targets, cur, ips) {
                    return true;
                }
                for p in 0..k {
                    ips[p] -= v * self.cols[p][j];
                }
                cur[j] = 0;
                if self.aborted {
                    return false;
                }
            }
        }
        false
    }

    /// Writes `rem` as a non-increasing sequence of positive squares on fresh coordinates.
    fn fresh(&mut self, k: usize, rem: i64, free: usize, max: i64, parts: &mut Vec<i64>, cur: &mut Vec<i64>) -> bool {
        if rem == 0 {
            let start = self.used;
            for (t, &a) in parts.iter().enumerate() {
                cur[start + t] = a;
            }
            let col = cur.clone();
            let mut suf = vec![0i64; self.dim + 1];
            for r in (0..self.dim).rev() {
                suf[r] = suf[r + 1] + col[r] * col[r];
            }
            self.cols.push(col);
            self.suffix.push(suf);
            self.used = start + parts.len();
            if self.place(k + 1) {
                return true;
            }
            self.used = start;
            self.cols.pop();
            self.suffix.pop();
            for t in 0..parts.len() {
                cur[start + t] = 0;
            }
            return false;
        }
        if free == 0 || self.aborted {
            return false;
        }
        let mut a = max.min(rem.isqrt());
        while a >= 1 {
            parts.push(a);
            if self.fresh(k, rem - a * a, free - 1, a, parts, cur) {
                return true;
            }
            parts.pop();
            if self.aborted {
                return false;
            }
            a -= 1;
        }
        false
    }
}

fn column_order(b: &[Vec<i64>]) -> Vec<usize> {
    let n = b.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = (0..n).filter(|&p| placed[p] && b[v][p] != 0).count();
                (b[v][v], links, std::cmp::Reverse(v))
            })
            .expect("columns remain");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Exhaustive search for an integer `Z` with `ZᵀZ = s·B` in dimension at most
/// `rank(B) + max_extra_dim`.
pub fn decompose_generic(b: &GramLattice, s: u64, params: GenericParams) -> Result<GenericOutcome, LatticeError> {
    if s == 0 {
        return Err(LatticeError::ZeroScale);
    }
    let rows = b.gram.rows();
    let rank = psd_check_int(&b.gram, 0).rank();
    let dim = rank + params.max_extra_dim;
    let order = column_order(&rows);
    let mut search = Search {
        b: &rows,
        s: s as i64,
        order: order.clone(),
        dim,
        cols: Vec::new(),
        suffix: Vec::new(),
        used: 0,
        nodes: 0,
        budget: params.node_budget,
        aborted: false,
    };
    if search.place(0) {
        let mut columns = vec![Vec::new(); rows.len()];
        for (k, &c) in order.iter().enumerate() {
            columns[c] = search.cols[k].clone();
        }
        let d = IntegralDecomposition::new(s, columns, &b.gram)?.compact();
        return Ok(GenericOutcome::Feasible(d));
    }
    if search.aborted {
        return Ok(GenericOutcome::Inconclusive { nodes: search.nodes });
    }
    Ok(GenericOutcome::Infeasible { dim_bound: dim, nodes: search.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::IntSymMatrix;

    fn lat(rows: Vec<Vec<i64>>) -> GramLattice {
        GramLattice::new(IntSymMatrix::from_rows(rows).unwrap(), "test").unwrap()
    }

    #[test]
    fn single_norm_three() {
        let out = decompose_generic(&lat(vec![vec![3]]), 1, GenericParams::default()).unwrap();
        assert_eq!(out.certificate().unwrap().columns, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn a2_feasible_both_scales() {
        let b = lat(vec![vec![2, -1], vec![-1, 2]]);
        for s in [1, 2] {
            assert!(decompose_generic(&b, s, GenericParams::default()).unwrap().certificate().is_some());
        }
    }

    #[test]
    fn budget_gives_inconclusive() {
        let b = lat(vec![vec![2, -1], vec![-1, 2]]);
        let out = decompose_generic(&b, 1, GenericParams { max_extra_dim: 8, node_budget: 1 }).unwrap();
        assert!(matches!(out, GenericOutcome::Inconclusive { .. }));
    }

    #[test]
    fn zero_generator() {
        let b = lat(vec![vec![1, 0], vec![0, 0]]);
        let d = decompose_generic(&b, 2, GenericParams::default()).unwrap();
        assert_eq!(d.certificate().unwrap().columns[1], vec![0, 0]);
    }
}
