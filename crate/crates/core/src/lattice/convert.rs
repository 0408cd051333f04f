use std::collections::BTreeSet;

use super::{sum_of_squares, IntegralDecomposition, LatticeError};
use crate::exactmat::{psd_check_int, IntSymMatrix};
use crate::hoffman::HoffmanGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ReducedToFull,
    FullToReduced,
}

/// `A(H) + L(t)`: adjacency of the whole Hoffman graph with `t` on slim and
/// `1` on fat diagonal positions.
pub fn full_gram(h: &HoffmanGraph, t: i64) -> Result<IntSymMatrix, LatticeError> {
    Ok(IntSymMatrix::from_fn(h.n(), |i, j| {
        if i == j {
            if h.is_fat_vertex(i) {
                1
            } else {
                t
            }
        } else {
            i64::from(h.graph.has_edge(i, j))
        }
    })?)
}

pub fn reduced_gram(h: &HoffmanGraph, t: i64) -> Result<IntSymMatrix, LatticeError> {
    Ok(h.special_matrix()?.shifted(t))
}

/// Converts between certificates of `Sp(𝔥)+tI` (columns in slim order) and of
/// `A(H)+L(t)` (columns in vertex order of `h`).
pub fn convert_reduced_full(
    h: &HoffmanGraph,
    t: i64,
    input: &IntegralDecomposition,
    direction: Direction,
) -> Result<IntegralDecomposition, LatticeError> {
    let slim = h.slim_vertices();
    let fat = h.fat_vertices();
    let reduced = reduced_gram(h, t)?;
    let full = full_gram(h, t)?;
    let s = input.scale;
    match direction {
        Direction::ReducedToFull => {
            input.verify(&reduced)?;
            let root = sum_of_squares(s);
            let q = root.len();
            let dim = input.ambient_dim + q * fat.len();
            let mut columns = vec![vec![0i64; dim]; h.n()];
            let fat_block = |k: usize, col: &mut Vec<i64>| {
                for (t, &a) in root.iter().enumerate() {
                    col[input.ambient_dim + k * q + t] += a;
                }
            };
            for (i, &x) in slim.iter().enumerate() {
                columns[x][..input.ambient_dim].copy_from_slice(&input.columns[i]);
                for (k, &f) in fat.iter().enumerate() {
                    if h.graph.has_edge(x, f) {
                        fat_block(k, &mut columns[x]);
                    }
                }
            }
            for (k, &f) in fat.iter().enumerate() {
                fat_block(k, &mut columns[f]);
            }
            IntegralDecomposition::new(s, columns, &full)
        }
        Direction::FullToReduced => {
            input.verify(&full)?;
            let columns = slim
                .iter()
                .map(|&x| {
                    let mut c = input.columns[x].clone();
                    for f in h.fat_neighbors(x) {
                        for (a, b) in c.iter_mut().zip(&input.columns[f]) {
                            *a -= b;
                        }
                    }
                    c
                })
                .collect();
            IntegralDecomposition::new(s, columns, &reduced)
        }
    }
}

fn check_clique_hypotheses(h: &HoffmanGraph) -> Result<IntSymMatrix, LatticeError> {
    let v = h.validate();
    if !v.is_fat {
        return Err(LatticeError::Hypothesis("Hoffman graph is not fat".into()));
    }
    let sp = h.special_matrix()?;
    if !psd_check_int(&sp, 3).is_psd {
        return Err(LatticeError::Hypothesis("smallest eigenvalue below -3".into()));
    }
    Ok(sp)
}

/// Certificate of `A(G(𝔥,n)) + 3I` at scale 1 from one of `Sp(𝔥) + 3I`.
/// Columns follow the vertex order of [`HoffmanGraph::blow_up`].
pub fn clique_lift(h: &HoffmanGraph, reduced: &IntegralDecomposition, n: usize) -> Result<IntegralDecomposition, LatticeError> {
    let sp = check_clique_hypotheses(h)?;
    if reduced.scale != 1 {
        return Err(LatticeError::Hypothesis(format!("reduced certificate has scale {}, expected 1", reduced.scale)));
    }
    reduced.verify(&sp.shifted(3))?;
    if n == 0 {
        return Err(LatticeError::Hypothesis("clique size must be positive".into()));
    }
    let slim = h.slim_vertices();
    let fat = h.fat_vertices();
    let d0 = reduced.ambient_dim;
    let r = fat.len();
    let dim = d0 + r + 2 * n * r;
    let mut columns = Vec::with_capacity(slim.len() + n * r);
    for (i, &x) in slim.iter().enumerate() {
        let mut c = vec![0i64; dim];
        c[..d0].copy_from_slice(&reduced.columns[i]);
        for (k, &f) in fat.iter().enumerate() {
            if h.graph.has_edge(x, f) {
                c[d0 + k] = 1;
            }
        }
        columns.push(c);
    }
    for k in 0..r {
        for j in 0..n {
            let mut c = vec![0i64; dim];
            c[d0 + k] = 1;
            c[d0 + r + 2 * (k * n + j)] = 1;
            c[d0 + r + 2 * (k * n + j) + 1] = 1;
            columns.push(c);
        }
    }
    let g = h.blow_up(n)?.adjacency_matrix()?.shifted(3);
    IntegralDecomposition::new(1, columns, &g)
}

fn support(c: &[i64]) -> BTreeSet<usize> {
    c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect()
}

/// Four clique columns whose supports pairwise meet exactly in `{r}` and that
/// agree with `x` in sign at `r`.
fn find_quadruple(xcol: &[i64], r: usize, clique: &[&Vec<i64>]) -> bool {
    let cand: Vec<(usize, BTreeSet<usize>)> = clique
        .iter()
        .enumerate()
        .filter(|(_, c)| c[r] == xcol[r])
        .map(|(j, c)| (j, support(c)))
        .collect();
    fn grow(cand: &[(usize, BTreeSet<usize>)], start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == 4 {
            return true;
        }
        for i in start..cand.len() {
            if chosen.iter().all(|&c| cand[c].1.intersection(&cand[i].1).count() == 1) {
                chosen.push(i);
                if grow(cand, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    grow(&cand, 0, &mut Vec::new())
}

/// Recovers a certificate of `Sp(𝔥) + 3I` from one of `A(G(𝔥,n)) + 3I`
/// (columns in [`HoffmanGraph::blow_up`] order, scale 1, `n ≥ 20`).
pub fn clique_extract(h: &HoffmanGraph, full: &IntegralDecomposition, n: usize) -> Result<IntegralDecomposition, LatticeError> {
    let sp = check_clique_hypotheses(h)?;
    if n < 20 {
        return Err(LatticeError::Hypothesis(format!("extraction needs n >= 20, got {n}")));
    }
    if full.scale != 1 {
        return Err(LatticeError::Hypothesis(format!("full certificate has scale {}, expected 1", full.scale)));
    }
    let g = h.blow_up(n)?.adjacency_matrix()?.shifted(3);
    full.verify(&g)?;
    for (i, c) in full.columns.iter().enumerate() {
        if support(c).len() != 3 {
            return Err(LatticeError::Hypothesis(format!("column {i} does not have support of size 3")));
        }
    }
    let slim = h.slim_vertices();
    let fat = h.fat_vertices();
    let m = slim.len();
    let mut out: Vec<Vec<i64>> = full.columns[..m].to_vec();
    for (k, &f) in fat.iter().enumerate() {
        let clique: Vec<&Vec<i64>> = full.columns[m + k * n..m + (k + 1) * n].iter().collect();
        let adjacent: Vec<usize> = (0..m).filter(|&i| h.graph.has_edge(slim[i], f)).collect();
        let first = adjacent[0];
        let xcol = &full.columns[first];
        let r = support(xcol)
            .into_iter()
            .find(|&r| find_quadruple(xcol, r, &clique))
            .ok_or_else(|| LatticeError::ExtractionFailed(format!("no qualifying clique vertices for fat vertex {f}")))?;
        for &i in &adjacent {
            let c = &full.columns[i];
            if c[r] != xcol[r] {
                return Err(LatticeError::ExtractionFailed(format!("slim vertex {} disagrees at coordinate {r}", slim[i])));
            }
            out[i][r] = 0;
        }
    }
    let d = IntegralDecomposition { scale: 1, ambient_dim: full.ambient_dim, columns: out }.compact();
    d.verify(&sp.shifted(3))?;
    Ok(d)
}
