//! Graph families and ingestion of external base graphs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::formats::{parse_graph, ParseError};
use crate::hoffman::{canonical_fat, FatMode, Graph, HoffmanError, HoffmanGraph};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("could not sample a generalized line graph on {n} vertices in dimension {dim}")]
    Sampling { n: usize, dim: usize },
    #[error("strongly regular check failed: {0}")]
    Srg(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Hoffman(#[from] HoffmanError),
}

fn need(cond: bool, msg: impl Into<String>) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::Param(msg.into()))
    }
}

pub fn path(n: usize) -> Result<Graph, FamilyError> {
    need(n >= 1, "path needs at least one vertex")?;
    Ok(Graph::from_fn(n, |i, j| j == i + 1))
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    need(n >= 3, "cycle needs at least three vertices")?;
    Ok(Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1)))
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    need(n >= 1, "complete graph needs at least one vertex")?;
    Ok(Graph::from_fn(n, |_, _| true))
}

/// `K_{1,t}` with centre 0.
pub fn claw(t: usize) -> Result<Graph, FamilyError> {
    need(t >= 1, "claw needs at least one leaf")?;
    Ok(Graph::from_fn(t + 1, |i, _| i == 0))
}

/// Clique on `0..2m` plus apex `2m` adjacent to `0..m`.
pub fn k_tilde(m: usize) -> Result<Graph, FamilyError> {
    need(m >= 1, "m must be positive")?;
    Ok(Graph::from_fn(2 * m + 1, |i, j| j < 2 * m || i < m))
}

/// Path 0-1-2-3-4 with the branch 2-5-6.
pub fn e6_tilde() -> Graph {
    Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).expect("fixed edges")
}

/// Adds `k` mutually adjacent vertices joined to every vertex of `g`.
pub fn k_point_cone(g: &Graph, k: usize) -> Graph {
    let n = g.n();
    Graph::from_fn(n + k, |i, j| j >= n || g.has_edge(i, j))
}

/// Cone over `base` (cone vertex `|base|`) with a `K_m` on the last `m`
/// vertices, each joined to the cone vertex.
pub fn k_of_m(base: &Graph, m: usize) -> Result<Graph, FamilyError> {
    need(m >= 1, "m must be positive")?;
    let n = base.n();
    Ok(Graph::from_fn(n + 1 + m, |i, j| {
        if j < n {
            base.has_edge(i, j)
        } else if j == n {
            true
        } else {
            i >= n
        }
    }))
}

/// `G(𝔥, n)`: every fat vertex replaced by an `n`-clique.
pub fn clique_blow_up(h: &HoffmanGraph, n: usize) -> Result<Graph, FamilyError> {
    need(n >= 1, "clique size must be positive")?;
    Ok(h.blow_up(n)?)
}

/// `G(𝔭(H), n)`.
pub fn p_blow_up(h: &Graph, n: usize) -> Result<Graph, FamilyError> {
    clique_blow_up(&canonical_fat(h, FatMode::P), n)
}

/// Random connected generalized line graph on `n` vertices, sampled as
/// vectors `±e_a ± e_b` in `Z^dim` with pairwise inner products in `{0, 1}`.
/// Returns the graph and its norm-2 columns.
pub fn random_glg(n: usize, dim: usize, seed: u64) -> Result<(Graph, Vec<Vec<i64>>), FamilyError> {
    need(n >= 1, "n must be positive")?;
    need(dim >= 2, "dimension must be at least 2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = (0..100).find_map(|_| sample_glg_columns(&mut rng, n, dim)).ok_or(FamilyError::Sampling { n, dim })?;
    let g = Graph::from_fn(n, |i, j| dot(&cols[i], &cols[j]) == 1);
    Ok((g, cols))
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One greedy attempt; `None` when it gets stuck.
fn sample_glg_columns(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Option<Vec<Vec<i64>>> {
    let sign = |rng: &mut ChaCha8Rng| if rng.random_bool(0.5) { 1 } else { -1 };
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(n);
    let mut first = vec![0i64; dim];
    let a = rng.random_range(0..dim);
    let b = (a + rng.random_range(1..dim)) % dim;
    first[a] = sign(rng);
    first[b] = sign(rng);
    cols.push(first);
    let mut attempts = 0usize;
    while cols.len() < n {
        attempts += 1;
        if attempts > 200 * n {
            return None;
        }
        let u = &cols[rng.random_range(0..cols.len())];
        let support: Vec<usize> = (0..dim).filter(|&i| u[i] != 0).collect();
        let keep = support[rng.random_range(0..support.len())];
        let other = rng.random_range(0..dim);
        if other == keep {
            continue;
        }
        let mut v = vec![0i64; dim];
        v[keep] = u[keep];
        v[other] = sign(rng);
        let ips: Vec<i64> = cols.iter().map(|c| dot(c, &v)).collect();
        if ips.iter().all(|&x| x == 0 || x == 1) && ips.contains(&1) {
            cols.push(v);
        }
    }
    Some(cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrgReport {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

/// Exact strong-regularity check by neighbourhood counting.
pub fn check_srg(g: &Graph, expected: (usize, usize, usize, usize)) -> Result<SrgReport, FamilyError> {
    let (n, k, lambda, mu) = expected;
    if g.n() != n {
        return Err(FamilyError::Srg(format!("{} vertices, expected {n}", g.n())));
    }
    for v in 0..n {
        if g.degree(v) != k {
            return Err(FamilyError::Srg(format!("vertex {v} has degree {}, expected {k}", g.degree(v))));
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let common = g.neighbor_set(u).intersection(g.neighbor_set(v)).count();
            let (want, kind) = if g.has_edge(u, v) { (lambda, "adjacent") } else { (mu, "non-adjacent") };
            if common != want {
                return Err(FamilyError::Srg(format!("{kind} pair ({u},{v}) has {common} common neighbours, expected {want}")));
            }
        }
    }
    Ok(SrgReport { n, k, lambda, mu })
}

/// Reads a graph file, optionally validating strong-regularity parameters.
pub fn ingest_graph(path: &std::path::Path, expect_srg: Option<(usize, usize, usize, usize)>) -> Result<(Graph, Option<SrgReport>), FamilyError> {
    let text = std::fs::read_to_string(path).map_err(|source| FamilyError::Io { path: path.display().to_string(), source })?;
    let g = parse_graph(&text)?;
    let report = expect_srg.map(|p| check_srg(&g, p)).transpose()?;
    Ok((g, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::psd_check_int;

    #[test]
    fn small_families() {
        // m = 1 gives the path on three vertices
        let k2 = k_tilde(1).unwrap();
        assert!(k2.n() == 3 && k2.edge_count() == 2 && k2.is_connected());
        let kt = k_tilde(3).unwrap();
        assert_eq!(kt.degree(6), 3);
        assert_eq!(kt.edge_count(), 15 + 3);
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert_eq!(claw(3).unwrap().degree(0), 3);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn e6_tilde_is_singular_at_two() {
        let v = psd_check_int(&e6_tilde().adjacency_matrix().unwrap(), 2);
        assert!(v.is_psd && v.is_singular);
    }

    #[test]
    fn cone_degrees() {
        let c = cycle(6).unwrap();
        let h = k_point_cone(&c, 3);
        assert_eq!(h.min_degree(), (c.min_degree() + 3).min(c.n() + 2));
        let k = k_of_m(&c, 2).unwrap();
        assert_eq!(k.n(), 9);
        assert_eq!(k.degree(6), 6 + 2);
        assert_eq!(k.degree(7), 2);
    }

    #[test]
    fn glg_columns_match() {
        for seed in 0..5 {
            let (g, cols) = random_glg(12, 8, seed).unwrap();
            assert!(g.is_connected());
            for i in 0..12 {
                for j in 0..12 {
                    let ip: i64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
                    let want = if i == j { 2 } else { i64::from(g.has_edge(i, j)) };
                    assert_eq!(ip, want);
                }
            }
        }
        assert_eq!(random_glg(10, 6, 7).unwrap().0.edges(), random_glg(10, 6, 7).unwrap().0.edges());
    }

    #[test]
    fn srg_checks() {
        let petersen = Graph::from_fn(10, |i, j| {
            let pair = |v: usize| -> (usize, usize) {
                let mut idx = 0;
                for a in 0..5 {
                    for b in (a + 1)..5 {
                        if idx == v {
                            return (a, b);
                        }
                        idx += 1;
                    }
                }
                unreachable!()
            };
            let (a, b) = pair(i);
            let (c, d) = pair(j);
            a != c && a != d && b != c && b != d
        });
        assert_eq!(check_srg(&petersen, (10, 3, 0, 1)).unwrap().k, 3);
        assert!(check_srg(&complete(5).unwrap(), (275, 162, 105, 81)).is_err());
    }
}
