//! The associated Hoffman graph `𝔤(G,m,n)`: large maximal cliques, the
//! relation `≡ₙᵐ`, quasi-cliques and the `K̃₂ₘ` hypothesis.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactmat::psd_check_int;
use crate::hoffman::{Graph, HoffmanError, HoffmanGraph, Validation};

#[derive(Debug, thiserror::Error)]
pub enum AssocError {
    #[error("m must be at least 2, got {0}")]
    SmallM(usize),
    #[error("n = {n} is below (m+1)^2 = {bound}")]
    SmallN { n: usize, bound: usize },
    #[error("graph contains an induced K~_2m: {0:?}")]
    K2mPresent(Vec<usize>),
    #[error("relation is not transitive: cliques {a} and {b} share a class but fail the test (n >= (m+1)^2 hypothesis)")]
    PreconditionViolated { a: usize, b: usize },
    #[error("quasi-clique depends on the representative in class {class}")]
    QuasiCliqueMismatch { class: usize },
    #[error(transparent)]
    Hoffman(#[from] HoffmanError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AssocParams {
    pub m: usize,
    pub n: usize,
}

impl AssocParams {
    /// Parameters with the standing bound `n ≥ (m+1)²`.
    pub fn new(m: usize, n: usize) -> Result<Self, AssocError> {
        if m < 2 {
            return Err(AssocError::SmallM(m));
        }
        let bound = (m + 1) * (m + 1);
        if n < bound {
            return Err(AssocError::SmallN { n, bound });
        }
        Ok(AssocParams { m, n })
    }

    /// Parameters with `n` below `(m+1)²`; transitivity and quasi-clique
    /// consistency are still checked on every run.
    pub fn relaxed(m: usize, n: usize) -> Result<Self, AssocError> {
        if m < 2 {
            return Err(AssocError::SmallM(m));
        }
        if n < m {
            return Err(AssocError::SmallN { n, bound: m });
        }
        Ok(AssocParams { m, n })
    }
}

fn bitset(n: usize, items: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &i in items {
        b.insert(i);
    }
    b
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet, min: usize, out: &mut Vec<Vec<usize>>) {
    if p.is_clear() && x.is_clear() {
        if r.len() >= min {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
        }
        return;
    }
    if r.len() + p.count_ones(..) < min {
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| (p.intersection(g.neighbor_set(u)).count(), std::cmp::Reverse(u)))
        .expect("P or X non-empty");
    let branch: Vec<usize> = p.ones().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in branch {
        let nv = g.neighbor_set(v);
        let mut p2 = p.clone();
        p2.intersect_with(nv);
        let mut x2 = x.clone();
        x2.intersect_with(nv);
        r.push(v);
        bron_kerbosch(g, r, p2, x2, min, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Maximal cliques with at least `n` vertices, each sorted, in lexicographic order.
pub fn large_maximal_cliques(g: &Graph, n: usize) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..g.n()).collect();
    let mut out = Vec::new();
    bron_kerbosch(g, &mut Vec::new(), bitset(g.n(), &all), FixedBitSet::with_capacity(g.n()), n.max(1), &mut out);
    out.sort();
    out
}

/// An induced `K̃₂ₘ` as `[apex, clique…]`, or `None`. For `m ≥ 12` a PSD
/// certificate for `A + 3I` settles absence without search.
pub fn k2m_witness(g: &Graph, m: usize) -> Option<Vec<usize>> {
    if m >= 12 && g.n() > 0 && psd_check_int(&g.adjacency_matrix().expect("non-empty"), 3).is_psd {
        return None;
    }
    (0..g.n()).find_map(|apex| k2m_at(g, apex, m))
}

fn k2m_at(g: &Graph, apex: usize, m: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let near = g.neighbor_set(apex).clone();
    let mut far = FixedBitSet::with_capacity(n);
    for v in 0..n {
        if v != apex && !near.contains(v) {
            far.insert(v);
        }
    }
    if near.count_ones(..) < m || far.count_ones(..) < m {
        return None;
    }
    let mut p = near.clone();
    p.union_with(&far);
    let mut clique = Vec::new();
    if grow_k2m(g, &near, &far, m, p, &mut clique, 0, 0) {
        let mut out = vec![apex];
        clique.sort_unstable();
        out.extend(clique);
        Some(out)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn grow_k2m(
    g: &Graph,
    near: &FixedBitSet,
    far: &FixedBitSet,
    m: usize,
    mut p: FixedBitSet,
    clique: &mut Vec<usize>,
    inside: usize,
    outside: usize,
) -> bool {
    if inside == m && outside == m {
        return true;
    }
    if inside == m {
        p.intersect_with(far);
    }
    if outside == m {
        p.intersect_with(near);
    }
    let pn = p.intersection(near).count();
    let pf = p.intersection(far).count();
    if inside + pn < m || outside + pf < m {
        return false;
    }
    let cands: Vec<usize> = p.ones().collect();
    for v in cands {
        p.set(v, false);
        let mut p2 = p.clone();
        p2.intersect_with(g.neighbor_set(v));
        clique.push(v);
        let (i2, o2) = if near.contains(v) { (inside + 1, outside) } else { (inside, outside + 1) };
        if grow_k2m(g, near, far, m, p2, clique, i2, o2) {
            return true;
        }
        clique.pop();
        if inside + p.intersection(near).count() < m || outside + p.intersection(far).count() < m {
            return false;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueClass {
    pub members: Vec<Vec<usize>>,
    pub quasi_clique: Vec<usize>,
    pub params: AssocParams,
}

/// Vertices with at most `m − 1` non-neighbors in `c`.
fn quasi_clique(g: &Graph, c: &FixedBitSet, m: usize) -> Vec<usize> {
    let size = c.count_ones(..);
    (0..g.n())
        .filter(|&x| {
            let inside = usize::from(c.contains(x));
            let adjacent = c.intersection(g.neighbor_set(x)).count();
            size - adjacent - inside < m
        })
        .collect()
}

/// Each vertex of `a` has at most `m − 1` non-neighbors in `b`.
fn related(g: &Graph, a: &[usize], b: &FixedBitSet, m: usize) -> bool {
    let size = b.count_ones(..);
    a.iter().all(|&x| size - b.intersection(g.neighbor_set(x)).count() - usize::from(b.contains(x)) < m)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub fn clique_classes(g: &Graph, params: AssocParams) -> Result<Vec<CliqueClass>, AssocError> {
    if let Some(w) = k2m_witness(g, params.m) {
        return Err(AssocError::K2mPresent(w));
    }
    let cliques = large_maximal_cliques(g, params.n);
    let sets: Vec<FixedBitSet> = cliques.iter().map(|c| bitset(g.n(), c)).collect();
    let k = cliques.len();
    let m = params.m;
    let pass: Vec<Vec<bool>> = (0..k)
        .into_par_iter()
        .map(|i| (0..k).map(|j| related(g, &cliques[i], &sets[j], m) && related(g, &cliques[j], &sets[i], m)).collect())
        .collect();
    let mut parent: Vec<usize> = (0..k).collect();
    for i in 0..k {
        for j in (i + 1)..k {
            if pass[i][j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i);
    }
    let mut out = Vec::with_capacity(classes.len());
    for (ci, members) in classes.iter().enumerate() {
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                if !pass[a][b] {
                    return Err(AssocError::PreconditionViolated { a, b });
                }
            }
        }
        let q = quasi_clique(g, &sets[members[0]], m);
        if members[1..].iter().any(|&b| quasi_clique(g, &sets[b], m) != q) {
            return Err(AssocError::QuasiCliqueMismatch { class: ci });
        }
        out.push(CliqueClass { members: members.iter().map(|&i| cliques[i].clone()).collect(), quasi_clique: q, params });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Associated {
    #[serde(skip)]
    pub hoffman: HoffmanGraph,
    pub classes: Vec<CliqueClass>,
    pub is_fat: bool,
}

/// `𝔤(G,m,n)`: slim vertices `0..|G|` as in `G`, then one fat vertex per class.
pub fn associated_hoffman(g: &Graph, params: AssocParams) -> Result<Associated, AssocError> {
    let classes = clique_classes(g, params)?;
    let n = g.n();
    let mut edges = g.edges();
    for (k, c) in classes.iter().enumerate() {
        edges.extend(c.quasi_clique.iter().map(|&x| (x, n + k)));
    }
    let hoffman = HoffmanGraph::from_parts(n, classes.len(), &edges)?;
    let Validation { violation, is_fat } = hoffman.validate();
    if let Some(v) = violation {
        return Err(HoffmanError::Invalid(v).into());
    }
    Ok(Associated { hoffman, classes, is_fat })
}

#[derive(Clone, Debug, Serialize)]
pub struct FatScan {
    pub n: usize,
    pub associated: Associated,
    pub psd_shift3: bool,
}

/// Smallest `n` in `n_lo..=n_hi` for which `𝔤(G,m,n)` is fat and
/// `Sp + 3I` is PSD.
pub fn smallest_fat_associated(g: &Graph, m: usize, n_lo: usize, n_hi: usize) -> Result<Option<FatScan>, AssocError> {
    for n in n_lo.max(m)..=n_hi {
        let params = AssocParams::relaxed(m, n)?;
        let a = match associated_hoffman(g, params) {
            Ok(a) => a,
            Err(AssocError::PreconditionViolated { .. } | AssocError::QuasiCliqueMismatch { .. }) => continue,
            Err(e) => return Err(e),
        };
        if !a.is_fat {
            continue;
        }
        let sp = a.hoffman.special_matrix()?;
        if psd_check_int(&sp, 3).is_psd {
            return Ok(Some(FatScan { n, associated: a, psd_shift3: true }));
        }
    }
    Ok(None)
}

/// Largest clique size, for bounding scans.
pub fn clique_number(g: &Graph) -> usize {
    large_maximal_cliques(g, 1).iter().map(|c| c.len()).max().unwrap_or(0)
}
