//! Text formats for graphs, Hoffman graphs and matrices, and the JSON
//! certificate format.
//!
//! ```text
//! graph <n> <m>            hoffman <n_slim> <n_fat> <m>        matrix <n>
//! u v                      u v                                 a11 a12 ... a1n
//! ...                      ...                                 ...
//! ```
//!
//! Edges are 0-indexed with `u < v`. Blank lines and lines starting with `#`
//! are ignored.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactmat::IntSymMatrix;
use crate::hoffman::{Graph, HoffmanGraph};
use crate::lattice::{IntegralDecomposition, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| err(line, format!("expected {what}, found `{tok}`")))
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, keyword: &str, fields: usize) -> Result<(usize, Vec<usize>), ParseError> {
    let (ln, toks) = lines.next().ok_or_else(|| err(1, format!("empty input, expected `{keyword}` header")))?;
    if toks[0] != keyword {
        return Err(err(ln, format!("expected `{keyword}` header, found `{}`", toks[0])));
    }
    if toks.len() != fields + 1 {
        return Err(err(ln, format!("`{keyword}` header takes {fields} numbers")));
    }
    let nums = toks[1..].iter().map(|t| number(ln, t, "a non-negative integer")).collect::<Result<_, _>>()?;
    Ok((ln, nums))
}

fn edge_lines<'a>(
    lines: impl Iterator<Item = (usize, Vec<&'a str>)>,
    n: usize,
    m: usize,
    header_line: usize,
) -> Result<Vec<(usize, usize)>, ParseError> {
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    let mut last = header_line;
    for (ln, toks) in lines {
        last = ln;
        if toks.len() != 2 {
            return Err(err(ln, "expected an edge `u v`"));
        }
        let u: usize = number(ln, toks[0], "a vertex index")?;
        let v: usize = number(ln, toks[1], "a vertex index")?;
        if u >= v {
            return Err(err(ln, format!("edge ({u},{v}) must satisfy u < v")));
        }
        if v >= n {
            return Err(err(ln, format!("vertex {v} out of range for {n} vertices")));
        }
        if !seen.insert((u, v)) {
            return Err(err(ln, format!("duplicate edge ({u},{v})")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(last, format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(edges)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (ln, h) = header(&mut lines, "graph", 2)?;
    let edges = edge_lines(lines, h[0], h[1], ln)?;
    Graph::from_edges(h[0], &edges).map_err(|e| err(ln, e.to_string()))
}

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("graph {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_hoffman(text: &str) -> Result<HoffmanGraph, ParseError> {
    let mut lines = content_lines(text);
    let (ln, h) = header(&mut lines, "hoffman", 3)?;
    let edges = edge_lines(lines, h[0] + h[1], h[2], ln)?;
    let hg = HoffmanGraph::from_parts(h[0], h[1], &edges).map_err(|e| err(ln, e.to_string()))?;
    if let Some(v) = hg.validate().violation {
        return Err(err(ln, format!("not a Hoffman graph: {v}")));
    }
    Ok(hg)
}

pub fn write_hoffman(h: &HoffmanGraph) -> String {
    let slim = h.slim_vertices();
    let fat = h.fat_vertices();
    let mut order = slim.clone();
    order.extend(&fat);
    let sorted = h.induced(&order);
    let edges = sorted.graph.edges();
    let mut s = format!("hoffman {} {} {}\n", slim.len(), fat.len(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<IntSymMatrix, ParseError> {
    let mut lines = content_lines(text);
    let (ln, h) = header(&mut lines, "matrix", 1)?;
    let n = h[0];
    let mut rows = Vec::with_capacity(n);
    let mut last = ln;
    for (l, toks) in lines {
        last = l;
        if rows.len() == n {
            return Err(err(l, format!("more than {n} rows")));
        }
        if toks.len() != n {
            return Err(err(l, format!("row has {} entries, expected {n}", toks.len())));
        }
        rows.push(toks.iter().map(|t| number::<i64>(l, t, "an integer")).collect::<Result<Vec<_>, _>>()?);
    }
    if rows.len() != n {
        return Err(err(last, format!("expected {n} rows, found {}", rows.len())));
    }
    IntSymMatrix::from_rows(rows).map_err(|e| err(ln, e.to_string()))
}

pub fn write_matrix(m: &IntSymMatrix) -> String {
    let mut s = format!("matrix {}\n", m.order());
    for i in 0..m.order() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// SHA-256 of the matrix in [`write_matrix`] form, hex encoded.
pub fn gram_digest(m: &IntSymMatrix) -> String {
    let d = Sha256::digest(write_matrix(m).as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub scale: u64,
    pub ambient_dim: usize,
    pub columns: Vec<Vec<i64>>,
    pub gram_digest: String,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("gram digest mismatch: certificate {found}, matrix {expected}")]
    Digest { expected: String, found: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CertificateFile {
    pub fn new(d: &IntegralDecomposition, gram: &IntSymMatrix) -> Self {
        CertificateFile { scale: d.scale, ambient_dim: d.ambient_dim, columns: d.columns.clone(), gram_digest: gram_digest(gram) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks the digest against `gram` and re-verifies `ZᵀZ = s·gram` exactly.
    pub fn verify(&self, gram: &IntSymMatrix) -> Result<IntegralDecomposition, CertificateError> {
        let expected = gram_digest(gram);
        if expected != self.gram_digest {
            return Err(CertificateError::Digest { expected, found: self.gram_digest.clone() });
        }
        let d = IntegralDecomposition::new(self.scale, self.columns.clone(), gram)?;
        if d.ambient_dim != self.ambient_dim {
            return Err(LatticeError::RaggedColumns { col: 0, len: d.ambient_dim, dim: self.ambient_dim }.into());
        }
        Ok(d)
    }
}
