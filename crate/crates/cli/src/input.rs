use hofflat::exactmat::IntSymMatrix;
use hofflat::formats::{parse_graph, parse_hoffman, parse_matrix};
use hofflat::hoffman::{Graph, HoffmanGraph};
use sha2::{Digest, Sha256};

pub enum Input {
    Graph(Graph),
    Hoffman(HoffmanGraph),
    Matrix(IntSymMatrix),
}

pub struct Loaded {
    pub input: Input,
    pub digest: String,
}

pub fn read(path: &str) -> Result<(String, String), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let digest = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    Ok((text, digest))
}

/// Dispatches on the header keyword of the first content line.
pub fn load(path: &str) -> Result<Loaded, String> {
    let (text, digest) = read(path)?;
    let keyword = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    let input = match keyword {
        "graph" => Input::Graph(parse_graph(&text).map_err(|e| format!("{path}: {e}"))?),
        "hoffman" => Input::Hoffman(parse_hoffman(&text).map_err(|e| format!("{path}: {e}"))?),
        "matrix" => Input::Matrix(parse_matrix(&text).map_err(|e| format!("{path}: {e}"))?),
        other => return Err(format!("{path}: unknown file header `{other}`")),
    };
    Ok(Loaded { input, digest })
}

pub fn load_graph(path: &str) -> Result<(Graph, String), String> {
    match load(path)? {
        Loaded { input: Input::Graph(g), digest } => Ok((g, digest)),
        _ => Err(format!("{path}: expected a graph file")),
    }
}

pub fn load_matrix(path: &str) -> Result<(IntSymMatrix, String), String> {
    match load(path)? {
        Loaded { input: Input::Matrix(m), digest } => Ok((m, digest)),
        _ => Err(format!("{path}: expected a matrix file")),
    }
}

pub fn load_hoffman(path: &str) -> Result<(HoffmanGraph, String), String> {
    match load(path)? {
        Loaded { input: Input::Hoffman(h), digest } => Ok((h, digest)),
        _ => Err(format!("{path}: expected a Hoffman graph file")),
    }
}
