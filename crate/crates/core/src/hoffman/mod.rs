//! Hoffman graphs: slim/fat labelled graphs, special matrices, generated
//! subgraphs, the canonical fat graphs `𝔭(H)`, `𝔮(H)`, clique replacement and
//! labelled induced containment.

mod embed;
mod graph;

use std::collections::BTreeMap;

use crate::exactmat::{IntSymMatrix, MatrixError};
use crate::spectra;

pub use embed::contains_induced;
pub use graph::Graph;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HoffmanError {
    #[error("edge ({u},{v}) out of range for {n} vertices")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("label vector has length {labels}, graph has {n} vertices")]
    LabelLength { labels: usize, n: usize },
    #[error("invalid Hoffman graph: {0}")]
    Invalid(String),
    #[error("no slim vertices")]
    NoSlim,
    #[error("vertex {0} is fat")]
    FatVertex(usize),
    #[error("vertex {0} is not a fat vertex")]
    NotFat(usize),
    #[error("clique size for fat vertex {0} is zero")]
    ZeroSize(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FatMode {
    /// One private fat vertex per slim vertex.
    P,
    /// One fat vertex adjacent to every slim vertex.
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub violation: Option<String>,
    pub is_fat: bool,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoffmanGraph {
    pub graph: Graph,
    pub fat: Vec<bool>,
}

impl HoffmanGraph {
    pub fn new(graph: Graph, fat: Vec<bool>) -> Result<Self, HoffmanError> {
        if fat.len() != graph.n() {
            return Err(HoffmanError::LabelLength { labels: fat.len(), n: graph.n() });
        }
        Ok(HoffmanGraph { graph, fat })
    }

    /// Slim vertices `0..n_slim`, fat vertices `n_slim..n_slim+n_fat`.
    pub fn from_parts(n_slim: usize, n_fat: usize, edges: &[(usize, usize)]) -> Result<Self, HoffmanError> {
        let graph = Graph::from_edges(n_slim + n_fat, edges)?;
        let fat = (0..n_slim + n_fat).map(|v| v >= n_slim).collect();
        Ok(HoffmanGraph { graph, fat })
    }

    /// A plain graph viewed as a Hoffman graph without fat vertices.
    pub fn slim_only(graph: Graph) -> Self {
        let fat = vec![false; graph.n()];
        HoffmanGraph { graph, fat }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_fat_vertex(&self, v: usize) -> bool {
        self.fat[v]
    }

    pub fn slim_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.fat[v]).collect()
    }

    pub fn fat_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.fat[v]).collect()
    }

    pub fn fat_neighbors(&self, v: usize) -> Vec<usize> {
        self.graph.neighbors(v).filter(|&u| self.fat[u]).collect()
    }

    pub fn slim_neighbors(&self, v: usize) -> Vec<usize> {
        self.graph.neighbors(v).filter(|&u| !self.fat[u]).collect()
    }

    pub fn slim_graph(&self) -> Graph {
        self.graph.induced(&self.slim_vertices())
    }

    pub fn validate(&self) -> Validation {
        let mut violation = None;
        'outer: for f in self.fat_vertices() {
            for u in self.graph.neighbors(f) {
                if self.fat[u] {
                    violation = Some(format!("fat vertices {} and {} are adjacent", f.min(u), f.max(u)));
                    break 'outer;
                }
            }
            if self.slim_neighbors(f).is_empty() {
                violation = Some(format!("fat vertex {f} has no slim neighbor"));
                break;
            }
        }
        let is_fat = self.slim_vertices().iter().all(|&x| !self.fat_neighbors(x).is_empty());
        Validation { violation, is_fat }
    }

    fn ensure_valid(&self) -> Result<(), HoffmanError> {
        match self.validate().violation {
            Some(v) => Err(HoffmanError::Invalid(v)),
            None => Ok(()),
        }
    }

    /// `Sp(𝔥) = A_s − CCᵀ`, indexed by slim vertices in increasing order.
    pub fn special_matrix(&self) -> Result<IntSymMatrix, HoffmanError> {
        self.ensure_valid()?;
        let slim = self.slim_vertices();
        if slim.is_empty() {
            return Err(HoffmanError::NoSlim);
        }
        let fat = self.fat_vertices();
        let c: Vec<Vec<i64>> =
            slim.iter().map(|&x| fat.iter().map(|&f| i64::from(self.graph.has_edge(x, f))).collect()).collect();
        let sp = IntSymMatrix::from_fn(slim.len(), |i, j| {
            let a = i64::from(self.graph.has_edge(slim[i], slim[j]));
            a - c[i].iter().zip(&c[j]).map(|(p, q)| p * q).sum::<i64>()
        })?;
        for i in 0..slim.len() {
            let fi = self.graph.neighbor_set(slim[i]);
            for j in i..slim.len() {
                let expected = if i == j {
                    -(self.fat_neighbors(slim[i]).len() as i64)
                } else {
                    let common = fi.intersection(self.graph.neighbor_set(slim[j])).filter(|&u| self.fat[u]).count();
                    i64::from(self.graph.has_edge(slim[i], slim[j])) - common as i64
                };
                assert_eq!(sp.get(i, j), expected, "special matrix entry ({i},{j}) disagrees with the entry formula");
            }
        }
        Ok(sp)
    }

    pub fn lambda_min_float(&self) -> Result<f64, HoffmanError> {
        Ok(spectra::lambda_min_float(&self.special_matrix()?))
    }

    /// `⟨W⟩`: the slim vertices `w` (in the given order) followed by every fat
    /// vertex with a neighbor in `w`, in original order.
    pub fn generated_subgraph(&self, w: &[usize]) -> Result<HoffmanGraph, HoffmanError> {
        if let Some(&v) = w.iter().find(|&&v| self.fat[v]) {
            return Err(HoffmanError::FatVertex(v));
        }
        let mut verts = w.to_vec();
        verts.extend(self.fat_vertices().into_iter().filter(|&f| w.iter().any(|&x| self.graph.has_edge(x, f))));
        Ok(self.induced(&verts))
    }

    /// Induced labelled subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> HoffmanGraph {
        HoffmanGraph { graph: self.graph.induced(vertices), fat: vertices.iter().map(|&v| self.fat[v]).collect() }
    }

    /// Replaces each keyed fat vertex `f` by a slim clique of size `sizes[f]`
    /// joined to all of `N(f)`. Output order: original slim vertices, the new
    /// cliques in fat-vertex order, then the fat vertices left in place.
    pub fn clique_replace(&self, sizes: &BTreeMap<usize, usize>) -> Result<HoffmanGraph, HoffmanError> {
        for (&f, &k) in sizes {
            if f >= self.n() || !self.fat[f] {
                return Err(HoffmanError::NotFat(f));
            }
            if k == 0 {
                return Err(HoffmanError::ZeroSize(f));
            }
        }
        let slim = self.slim_vertices();
        let kept: Vec<usize> = self.fat_vertices().into_iter().filter(|f| !sizes.contains_key(f)).collect();
        // origin[v] = original vertex that new vertex v stands for
        let mut origin: Vec<usize> = slim.clone();
        let mut clique_of: Vec<Option<usize>> = vec![None; slim.len()];
        for (&f, &k) in sizes {
            for _ in 0..k {
                origin.push(f);
                clique_of.push(Some(f));
            }
        }
        let base = origin.len();
        origin.extend(&kept);
        clique_of.extend(kept.iter().map(|_| None));
        let total = origin.len();
        let graph = Graph::from_fn(total, |i, j| match (clique_of[i], clique_of[j]) {
            (Some(a), Some(b)) => a == b,
            _ => self.graph.has_edge(origin[i], origin[j]),
        });
        let fat = (0..total).map(|v| v >= base).collect();
        Ok(HoffmanGraph { graph, fat })
    }

    /// `G(𝔥, n)`: every fat vertex replaced by an `n`-clique. Vertex order:
    /// slim vertices, then `n` clique vertices per fat vertex in fat order.
    pub fn blow_up(&self, n: usize) -> Result<Graph, HoffmanError> {
        let sizes: BTreeMap<usize, usize> = self.fat_vertices().into_iter().map(|f| (f, n)).collect();
        Ok(self.clique_replace(&sizes)?.graph)
    }
}

pub fn canonical_fat(h: &Graph, mode: FatMode) -> HoffmanGraph {
    let n = h.n();
    let mut edges = h.edges();
    let n_fat = match mode {
        FatMode::P => {
            edges.extend((0..n).map(|x| (x, n + x)));
            n
        }
        FatMode::Q => {
            edges.extend((0..n).map(|x| (x, n)));
            1
        }
    };
    HoffmanGraph::from_parts(n, n_fat, &edges).expect("edges in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    #[test]
    fn validation() {
        let single = HoffmanGraph::from_parts(1, 0, &[]).unwrap();
        assert_eq!(single.validate(), Validation { violation: None, is_fat: false });
        let fat_edge = HoffmanGraph::from_parts(1, 2, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!fat_edge.validate().is_ok());
        let lonely = HoffmanGraph::from_parts(1, 1, &[]).unwrap();
        assert!(!lonely.validate().is_ok());
        let p = canonical_fat(&k(2), FatMode::P);
        assert_eq!(p.validate(), Validation { violation: None, is_fat: true });
    }

    #[test]
    fn special_matrices() {
        assert_eq!(canonical_fat(&k(1), FatMode::P).special_matrix().unwrap().rows(), vec![vec![-1]]);
        assert_eq!(canonical_fat(&k(2), FatMode::Q).special_matrix().unwrap().rows(), vec![vec![-1, 0], vec![0, -1]]);
        let four = HoffmanGraph::from_parts(1, 4, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(four.special_matrix().unwrap().rows(), vec![vec![-4]]);
        let bad = HoffmanGraph::from_parts(1, 1, &[]).unwrap();
        assert!(bad.special_matrix().is_err());
    }

    #[test]
    fn generated_subgraphs() {
        let q = canonical_fat(&k(3), FatMode::Q);
        let sub = q.generated_subgraph(&[0]).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.fat, vec![false, true]);
        assert!(sub.graph.has_edge(0, 1));
        assert_eq!(q.generated_subgraph(&[3]), Err(HoffmanError::FatVertex(3)));

        // a fat vertex without neighbors in W is dropped
        let h = HoffmanGraph::from_parts(2, 2, &[(0, 2), (1, 3), (0, 1)]).unwrap();
        let all = h.generated_subgraph(&[0, 1]).unwrap();
        assert_eq!(all, h);
        assert_eq!(h.generated_subgraph(&[1]).unwrap().n(), 2);
    }

    #[test]
    fn clique_replacement() {
        let q1 = canonical_fat(&k(1), FatMode::Q);
        for n in 1..6 {
            let g = q1.blow_up(n).unwrap();
            assert_eq!(g, k(n + 1));
        }
        let p = canonical_fat(&k(2), FatMode::P);
        let partial = p.clique_replace(&BTreeMap::from([(2, 3)])).unwrap();
        assert_eq!(partial.n(), 6);
        assert_eq!(partial.fat, vec![false, false, false, false, false, true]);
        assert!(partial.graph.has_edge(0, 2) && partial.graph.has_edge(2, 4) && !partial.graph.has_edge(1, 2));
        assert!(partial.graph.has_edge(1, 5));
        assert_eq!(p.clique_replace(&BTreeMap::from([(2, 0)])), Err(HoffmanError::ZeroSize(2)));
        assert_eq!(p.clique_replace(&BTreeMap::from([(0, 1)])), Err(HoffmanError::NotFat(0)));
    }

    #[test]
    fn canonical_eigenvalues() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let lp = canonical_fat(&path, FatMode::P).lambda_min_float().unwrap();
        let lh = spectra::lambda_min_float(&path.adjacency_matrix().unwrap());
        assert!((lp - (lh - 1.0)).abs() < 1e-9);
        let lq = canonical_fat(&path, FatMode::Q).lambda_min_float().unwrap();
        let lc = spectra::lambda_max_float(&path.complement().adjacency_matrix().unwrap());
        assert!((lq - (-1.0 - lc)).abs() < 1e-9);
    }
}
