use serde_json::{json, Map, Value};

pub const SUCCESS: u8 = 0;
pub const VIOLATION: u8 = 1;
pub const INCONCLUSIVE: u8 = 2;

/// One JSON object per run. Keys serialize in sorted order, so identical
/// inputs give byte-identical output.
#[derive(Debug)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<(String, String)>,
    pub verdict: String,
    pub exit_code: u8,
    pub result: Value,
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(verdict: &str, exit_code: u8, result: Value) -> Self {
        RunReport { command: Vec::new(), inputs: Vec::new(), verdict: verdict.to_string(), exit_code, result, timing_ms: None }
    }

    pub fn with_input(mut self, path: &str, digest: String) -> Self {
        self.inputs.push((path.to_string(), digest));
        self
    }

    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("tool".into(), json!("hofflat"));
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        m.insert("command".into(), json!(self.command));
        let inputs: Vec<Value> = self.inputs.iter().map(|(p, d)| json!({"path": p, "sha256": d})).collect();
        m.insert("inputs".into(), Value::Array(inputs));
        m.insert("verdict".into(), json!(self.verdict));
        m.insert("exit_code".into(), json!(self.exit_code));
        m.insert("result".into(), self.result.clone());
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), json!(t));
        }
        serde_json::to_string(&Value::Object(m)).expect("plain data")
    }
}

pub enum Outcome {
    Report(RunReport),
    /// JSON lines followed by the report.
    Lines(Vec<String>, RunReport),
    /// Raw output such as a graph file, and an exit code.
    Text(String, u8),
}
