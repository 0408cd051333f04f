use serde::Serialize;

use super::convert::{convert_reduced_full, Direction};
use super::generic::{decompose_generic, GenericOutcome, GenericParams};
use super::reduce::reduce_gram;
use super::{classify_component, component_isometry, GramLattice, IntegralDecomposition, LatticeError};
use crate::assoc::{clique_number, smallest_fat_associated};
use crate::exactmat::{psd_check_int, IntSymMatrix};
use crate::hoffman::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CertifyRoute {
    /// Unit splitting and root-lattice classification of `A + tI`.
    Structural,
    /// Through the associated Hoffman graph `𝔤(G,m,n)` and `Sp + 3I`.
    Hoffman { m: usize, n: usize, fat_vertices: usize },
    Generic,
}

#[derive(Clone, Debug, Serialize)]
pub enum Verdict {
    Feasible(IntegralDecomposition),
    Infeasible { reason: String },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Certification {
    /// `−⌊λmin(G)⌋` for graphs, 0 for Gram matrices given directly.
    pub t: i64,
    pub route: CertifyRoute,
    /// Root components found on the structural routes, e.g. `["E6", "A1"]`.
    pub components: Vec<String>,
    pub verdict: Verdict,
}

impl Certification {
    pub fn certificate(&self) -> Option<&IntegralDecomposition> {
        match &self.verdict {
            Verdict::Feasible(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub generic: GenericParams,
    pub m: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { generic: GenericParams::default(), m: 12 }
    }
}

enum Structural {
    Done(IntegralDecomposition, Vec<String>),
    /// An exceptional component at scale 1.
    Exceptional(Vec<String>),
    /// Classification or construction did not apply.
    NotApplicable,
}

fn structural(b: &GramLattice, s: u64) -> Result<Structural, LatticeError> {
    let red = match reduce_gram(b) {
        Ok(r) => r,
        Err(LatticeError::NotNormBounded { .. }) => return Ok(Structural::NotApplicable),
        Err(e) => return Err(e),
    };
    let mut names = Vec::new();
    let mut comps = Vec::new();
    for block in &red.components {
        let gl = GramLattice::new(block.gram.clone(), "component")?;
        match classify_component(&gl) {
            Ok(c) => {
                names.push(c.name());
                comps.push((gl, c));
            }
            Err(LatticeError::NotRootLattice { .. }) => return Ok(Structural::NotApplicable),
            Err(e) => return Err(e),
        }
    }
    if s == 1 && comps.iter().any(|(_, c)| c.family.is_exceptional()) {
        return Ok(Structural::Exceptional(names));
    }
    let mut parts = Vec::with_capacity(comps.len());
    for (gl, c) in &comps {
        match component_isometry(gl, c, s) {
            Ok(d) => parts.push(d),
            Err(LatticeError::NoConstruction { .. } | LatticeError::IsometryNotFound { .. }) => {
                return Ok(Structural::NotApplicable)
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Structural::Done(red.assemble(s, &parts, &b.gram)?.compact(), names))
}

fn generic(b: &GramLattice, s: u64, params: GenericParams, t: i64, components: Vec<String>) -> Result<Certification, LatticeError> {
    let verdict = match decompose_generic(b, s, params)? {
        GenericOutcome::Feasible(d) => Verdict::Feasible(d),
        GenericOutcome::Infeasible { dim_bound, nodes } => {
            Verdict::Infeasible { reason: format!("exhaustive search in dimension <= {dim_bound} ({nodes} nodes)") }
        }
        GenericOutcome::Inconclusive { nodes } => Verdict::Inconclusive { reason: format!("node budget exhausted after {nodes} nodes") },
    };
    Ok(Certification { t, route: CertifyRoute::Generic, components, verdict })
}

/// Decides whether the lattice with Gram matrix `b` is `s`-integrable, through
/// root-lattice classification when it applies and exhaustive search otherwise.
pub fn certify_gram(b: &GramLattice, s: u64, opts: CertifyOptions) -> Result<Certification, LatticeError> {
    if s == 0 {
        return Err(LatticeError::ZeroScale);
    }
    from_structural(b, s, opts, 0)
}

fn from_structural(b: &GramLattice, s: u64, opts: CertifyOptions, t: i64) -> Result<Certification, LatticeError> {
    match structural(b, s)? {
        Structural::Done(d, names) => {
            d.verify(&b.gram)?;
            Ok(Certification { t, route: CertifyRoute::Structural, components: names, verdict: Verdict::Feasible(d) })
        }
        Structural::Exceptional(names) => Ok(Certification {
            t,
            route: CertifyRoute::Structural,
            verdict: Verdict::Infeasible { reason: format!("exceptional root component among {names:?} is not 1-integrable") },
            components: names,
        }),
        Structural::NotApplicable => generic(b, s, opts.generic, t, Vec::new()),
    }
}

/// Decides whether `A(G) + tI`, `t = −⌊λmin(G)⌋`, is `s`-integrable and
/// returns a verified certificate when it is.
pub fn certify_graph(g: &Graph, s: u64, opts: CertifyOptions) -> Result<Certification, LatticeError> {
    if s == 0 {
        return Err(LatticeError::ZeroScale);
    }
    if !g.is_connected() {
        return Err(LatticeError::Disconnected);
    }
    let a = g.adjacency_matrix()?;
    let t = (0..=3).find(|&t| psd_check_int(&a, t).is_psd).ok_or(LatticeError::OutOfScope)?;
    let b = GramLattice::new(a.shifted(t), format!("A + {t}I"))?;
    if t <= 2 {
        return from_structural(&b, s, opts, t);
    }
    if let Some(cert) = via_hoffman(g, &b, s, opts)? {
        return Ok(cert);
    }
    generic(&b, s, opts.generic, t, Vec::new())
}

fn via_hoffman(g: &Graph, b: &GramLattice, s: u64, opts: CertifyOptions) -> Result<Option<Certification>, LatticeError> {
    let omega = clique_number(g);
    let scan = match smallest_fat_associated(g, opts.m, opts.m, omega) {
        Ok(Some(scan)) => scan,
        Ok(None) | Err(_) => return Ok(None),
    };
    let h = &scan.associated.hoffman;
    let sp3: IntSymMatrix = h.special_matrix()?.shifted(3);
    let reduced = GramLattice::new(sp3, "Sp + 3I")?;
    let (red_cert, names) = match structural(&reduced, s)? {
        Structural::Done(d, names) => (d, names),
        Structural::Exceptional(_) | Structural::NotApplicable => return Ok(None),
    };
    let full = convert_reduced_full(h, 3, &red_cert, Direction::ReducedToFull)?;
    let slim: Vec<Vec<i64>> = h.slim_vertices().iter().map(|&x| full.columns[x].clone()).collect();
    let cert = IntegralDecomposition::new(s, slim, &b.gram)?.compact();
    let route = CertifyRoute::Hoffman { m: opts.m, n: scan.n, fat_vertices: h.fat_vertices().len() };
    Ok(Some(Certification { t: 3, route, components: names, verdict: Verdict::Feasible(cert) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6_tilde() -> Graph {
        Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn e6_tilde_scale_one_and_two() {
        let c1 = certify_graph(&e6_tilde(), 1, CertifyOptions::default()).unwrap();
        assert!(matches!(c1.verdict, Verdict::Infeasible { .. }));
        assert_eq!(c1.components, vec!["E6".to_string()]);
        let c2 = certify_graph(&e6_tilde(), 2, CertifyOptions::default()).unwrap();
        assert_eq!(c2.t, 2);
        let d = c2.certificate().unwrap();
        d.verify(&e6_tilde().adjacency_matrix().unwrap().shifted(2)).unwrap();
    }

    #[test]
    fn path_is_one_integrable() {
        let p = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = certify_graph(&p, 1, CertifyOptions::default()).unwrap();
        assert!(c.certificate().is_some());
    }

    #[test]
    fn complete_graph_units() {
        let k = Graph::from_fn(5, |_, _| true);
        let c = certify_graph(&k, 1, CertifyOptions::default()).unwrap();
        assert_eq!(c.t, 1);
        assert!(c.certificate().is_some());
        let single = Graph::empty(1);
        assert_eq!(certify_graph(&single, 1, CertifyOptions::default()).unwrap().t, 0);
    }

    #[test]
    fn gram_route() {
        let b = GramLattice::new(IntSymMatrix::from_rows(vec![vec![3]]).unwrap(), "norm 3").unwrap();
        let c = certify_gram(&b, 1, CertifyOptions::default()).unwrap();
        assert_eq!(c.route, CertifyRoute::Generic);
        assert_eq!(c.certificate().unwrap().columns, vec![vec![1, 1, 1]]);
        let a2 = GramLattice::new(IntSymMatrix::from_rows(vec![vec![2, -1], vec![-1, 2]]).unwrap(), "A2").unwrap();
        let c = certify_gram(&a2, 1, CertifyOptions::default()).unwrap();
        assert_eq!((c.route, c.components), (CertifyRoute::Structural, vec!["A2".to_string()]));
    }

    #[test]
    fn scope_checks() {
        let star = Graph::from_fn(11, |i, _| i == 0);
        assert!(matches!(certify_graph(&star, 1, CertifyOptions::default()), Err(LatticeError::OutOfScope)));
        assert!(matches!(certify_graph(&Graph::empty(2), 1, CertifyOptions::default()), Err(LatticeError::Disconnected)));
    }
}
