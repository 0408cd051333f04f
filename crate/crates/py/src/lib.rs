//! Python bindings. Matrices cross the boundary as lists of integer rows and
//! rationals as strings such as `"-5/2"`.

use hofflat::exactmat::{self, IntSymMatrix};
use hofflat::forbidden::{self, EnumParams};
use hofflat::hoffman;
use hofflat::lattice::{self, CertifyOptions, GramLattice, Verdict};
use hofflat::{families, formats, spectra};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix(rows: Vec<Vec<i64>>) -> PyResult<IntSymMatrix> {
    IntSymMatrix::from_rows(rows).map_err(value_err)
}

fn rational(s: &str) -> PyResult<BigRational> {
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| PyValueError::new_err(format!("invalid rational `{s}`")));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse(q)?;
            if q == BigInt::from(0) {
                return Err(PyValueError::new_err("zero denominator"));
            }
            Ok(BigRational::new(parse(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

#[pyclass(name = "Graph", module = "hofflat", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: hoffman::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: hoffman::Graph::from_edges(n, &edges).map_err(value_err)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: formats::parse_graph(text).map_err(value_err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn adjacency(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.inner.adjacency_matrix().map_err(value_err)?.rows())
    }

    fn lambda_min(&self) -> PyResult<f64> {
        Ok(spectra::lambda_min_float(&self.inner.adjacency_matrix().map_err(value_err)?))
    }

    fn to_text(&self) -> String {
        formats::write_graph(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "HoffmanGraph", module = "hofflat", from_py_object)]
#[derive(Clone)]
struct PyHoffman {
    inner: hoffman::HoffmanGraph,
}

#[pymethods]
impl PyHoffman {
    /// Slim vertices `0..n_slim`, fat vertices after them.
    #[new]
    fn new(n_slim: usize, n_fat: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = hoffman::HoffmanGraph::from_parts(n_slim, n_fat, &edges).map_err(value_err)?;
        if let Some(v) = inner.validate().violation {
            return Err(PyValueError::new_err(v));
        }
        Ok(PyHoffman { inner })
    }

    #[getter]
    fn n_slim(&self) -> usize {
        self.inner.slim_vertices().len()
    }

    #[getter]
    fn n_fat(&self) -> usize {
        self.inner.fat_vertices().len()
    }

    fn is_fat(&self) -> bool {
        self.inner.validate().is_fat
    }

    fn special_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.inner.special_matrix().map_err(value_err)?.rows())
    }

    fn blow_up(&self, n: usize) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.inner.blow_up(n).map_err(value_err)? })
    }

    /// `(is_minimal_forbidden, witness vertices or None)`.
    fn minimal_forbidden(&self) -> PyResult<(bool, Option<Vec<usize>>)> {
        let v = forbidden::minimal_forbidden_check(&self.inner).map_err(value_err)?;
        Ok((v.is_minimal_forbidden, v.witness.map(|w| w.vertices)))
    }

    fn to_text(&self) -> String {
        formats::write_hoffman(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("HoffmanGraph(slim={}, fat={})", self.n_slim(), self.n_fat())
    }
}

/// Exact test of `M + shift·I ⪰ 0`; returns `(is_psd, is_singular)`.
#[pyfunction]
#[pyo3(signature = (rows, shift = "0"))]
fn psd_check(rows: Vec<Vec<i64>>, shift: &str) -> PyResult<(bool, bool)> {
    let v = exactmat::psd_check(&matrix(rows)?, &rational(shift)?);
    Ok((v.is_psd, v.is_singular))
}

/// Certified `[lo, hi)` for the smallest eigenvalue, as rational strings.
#[pyfunction]
#[pyo3(signature = (rows, width = "1/1048576"))]
fn lambda_min_bracket(rows: Vec<Vec<i64>>, width: &str) -> PyResult<(String, String)> {
    let w = rational(width)?;
    if w <= BigRational::from_integer(0.into()) {
        return Err(PyValueError::new_err("width must be positive"));
    }
    let (lo, hi) = exactmat::lambda_min_bracket(&matrix(rows)?, &w);
    Ok((lo.to_string(), hi.to_string()))
}

#[pyfunction]
fn spectrum(rows: Vec<Vec<i64>>) -> PyResult<Vec<f64>> {
    Ok(spectra::float_spectrum(&matrix(rows)?))
}

fn certification_dict<'py>(py: Python<'py>, c: &lattice::Certification) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("t", c.t)?;
    d.set_item("components", c.components.clone())?;
    match &c.verdict {
        Verdict::Feasible(cert) => {
            d.set_item("verdict", "feasible")?;
            d.set_item("scale", cert.scale)?;
            d.set_item("columns", cert.columns.clone())?;
        }
        Verdict::Infeasible { reason } => {
            d.set_item("verdict", "infeasible")?;
            d.set_item("reason", reason)?;
        }
        Verdict::Inconclusive { reason } => {
            d.set_item("verdict", "inconclusive")?;
            d.set_item("reason", reason)?;
        }
    }
    Ok(d)
}

/// s-integrability of `A + tI` with `t = −⌊λmin⌋`.
#[pyfunction]
#[pyo3(signature = (graph, s = 1))]
fn certify_graph<'py>(py: Python<'py>, graph: &PyGraph, s: u64) -> PyResult<Bound<'py, PyDict>> {
    let c = py.detach(|| lattice::certify_graph(&graph.inner, s, CertifyOptions::default())).map_err(value_err)?;
    certification_dict(py, &c)
}

/// s-integrability of a Gram matrix.
#[pyfunction]
#[pyo3(signature = (rows, s = 1))]
fn certify_gram<'py>(py: Python<'py>, rows: Vec<Vec<i64>>, s: u64) -> PyResult<Bound<'py, PyDict>> {
    let b = GramLattice::new(matrix(rows)?, "python").map_err(value_err)?;
    let c = py.detach(|| lattice::certify_gram(&b, s, CertifyOptions::default())).map_err(value_err)?;
    certification_dict(py, &c)
}

/// Candidate matrices up to `max_order`, as `(order, rows)` pairs.
#[pyfunction]
fn enumerate_candidates(py: Python<'_>, max_order: usize) -> PyResult<Vec<(usize, Vec<Vec<i64>>)>> {
    let e = py.detach(|| forbidden::enumerate_mhat_with(EnumParams::new(max_order))).map_err(value_err)?;
    Ok(e.candidates.iter().map(|c| (c.order, c.m.rows())).collect())
}

/// A fat Hoffman graph with `Sp + I` equal to `rows`, if one exists.
#[pyfunction]
fn realize(rows: Vec<Vec<i64>>) -> PyResult<Option<PyHoffman>> {
    Ok(forbidden::realize_special(&matrix(rows)?).map(|inner| PyHoffman { inner }))
}

/// Smallest eigenvalues `μ₁..μ_nmax` of the limit matrices.
#[pyfunction]
fn limit_mu(rows: Vec<Vec<i64>>, i2: Vec<usize>, nmax: usize) -> PyResult<Vec<f64>> {
    let m = matrix(rows)?;
    let p = spectra::Partition::from_i2(m.order(), i2).map_err(value_err)?;
    Ok(spectra::limit_report(&m, &p, nmax).map_err(value_err)?.mu)
}

#[pyfunction]
fn e6_tilde() -> PyGraph {
    PyGraph { inner: families::e6_tilde() }
}

#[pyfunction]
fn k_tilde(m: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: families::k_tilde(m).map_err(value_err)? })
}

#[pyfunction]
fn p_blow_up(base: &PyGraph, n: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: families::p_blow_up(&base.inner, n).map_err(value_err)? })
}

#[pyfunction]
#[pyo3(signature = (n, dim, seed = 0))]
fn random_glg(n: usize, dim: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: families::random_glg(n, dim, seed).map_err(value_err)?.0 })
}

#[pymodule]
#[pyo3(name = "hofflat")]
fn hofflat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyHoffman>()?;
    m.add_function(wrap_pyfunction!(psd_check, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_min_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(certify_graph, m)?)?;
    m.add_function(wrap_pyfunction!(certify_gram, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_candidates, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(limit_mu, m)?)?;
    m.add_function(wrap_pyfunction!(e6_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(k_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(p_blow_up, m)?)?;
    m.add_function(wrap_pyfunction!(random_glg, m)?)?;
    Ok(())
}
