//! One JSON object per line: what ran, on what, and what came out.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub op: String,
    pub params: Value,
    /// `PASS`, `FAIL`, or an operation-specific verdict.
    pub status: String,
    pub witness: Value,
    /// Exact margin as `p/q` where the operation has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scanned: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: f64,
}

impl RunRecord {
    pub fn new(op: impl Into<String>, params: Value, status: impl Into<String>) -> Self {
        RunRecord {
            op: op.into(),
            params,
            status: status.into(),
            witness: Value::Null,
            margin: None,
            scanned: None,
            seed: None,
            elapsed_ms: 0.0,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_margin(mut self, margin: impl Into<String>) -> Self {
        self.margin = Some(margin.into());
        self
    }

    pub fn with_scanned(mut self, scanned: u64) -> Self {
        self.scanned = Some(scanned);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_shape() {
        let r = RunRecord::new("sumset", serde_json::json!({"m": 15}), "PASS")
            .with_scanned(3)
            .with_margin("1/2");
        let line = r.to_json_line();
        assert!(!line.contains('\n'));
        let v: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["op"], "sumset");
        assert_eq!(v["margin"], "1/2");
        assert!(v.get("seed").is_none());
    }
}
