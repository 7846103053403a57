use std::fs::OpenOptions;
use std::io::Write;

use anyhow::Context;
use serde_json::Value;
use ternary_core::report::RunRecord;

use crate::args::{Format, GlobalArgs};

/// Rows for CSV output.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Outcome {
    pub record: RunRecord,
    pub human: String,
    pub table: Option<Table>,
    /// A mathematical assertion failed.
    pub failed: bool,
}

impl Outcome {
    pub fn new(record: RunRecord, human: String) -> Self {
        Outcome {
            record,
            human,
            table: None,
            failed: false,
        }
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn certificate_failure(op: &str, err: &ternary_core::Error) -> Self {
        let record = RunRecord::new(op, Value::Null, "CERTIFICATE_FAILURE")
            .with_witness(Value::String(err.to_string()));
        Outcome {
            human: format!("CERTIFICATE_FAILURE: {err}"),
            record,
            table: None,
            failed: true,
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render(format: Format, config: &Value, outcome: &Outcome) -> String {
    let mut record = outcome.record.clone();
    if record.params.is_null() {
        record.params = config["params"].clone();
    }
    record.seed = record.seed.or(config["params"]["seed"]
        .as_str()
        .and_then(|s| s.parse().ok()));
    match format {
        Format::Jsonl => {
            let header = serde_json::json!({ "op": "config", "config": config });
            format!("{header}\n{}\n", record.to_json_line())
        }
        Format::Csv => {
            let mut out = format!("# config: {config}\n");
            match &outcome.table {
                Some(t) => {
                    out.push_str(&t.header.join(","));
                    out.push('\n');
                    for row in &t.rows {
                        out.push_str(
                            &row.iter()
                                .map(|s| csv_field(s))
                                .collect::<Vec<_>>()
                                .join(","),
                        );
                        out.push('\n');
                    }
                    out.push_str(&format!("# summary: {}\n", record.to_json_line()));
                }
                None => {
                    out.push_str("key,value\n");
                    let v = serde_json::to_value(&record).expect("records serialize");
                    for (k, x) in v.as_object().expect("record is an object") {
                        out.push_str(&format!("{},{}\n", csv_field(k), csv_field(&scalar(x))));
                    }
                }
            }
            out
        }
        Format::Human => {
            let mut out = outcome.human.clone();
            if !out.ends_with('\n') {
                out.push('\n');
            }
            out
        }
    }
}

pub fn emit(global: &GlobalArgs, config: &Value, outcome: &Outcome) -> anyhow::Result<()> {
    let text = render(global.format, config, outcome);
    match &global.output {
        Some(path) => {
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("cannot open {}", path.display()))?;
            f.write_all(text.as_bytes())?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
