use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    /// Present only with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Columns that lead a CSV projection of check reports, in this order.
pub const REPORT_COLUMNS: &[&str] = &[
    "identity_id",
    "oracle",
    "params_a_re",
    "params_a_im",
    "params_b_re",
    "params_b_im",
    "params_c_re",
    "params_c_im",
    "params_d_re",
    "params_d_im",
    "params_e_re",
    "params_e_im",
    "s_re",
    "s_im",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "abs_residual",
    "rel_residual",
    "tolerance",
    "pass",
    "near_zero_rhs",
    "diagnostics",
];

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}_{k}")
                };
                flatten_into(&key, x, out);
            }
        }
        Value::Array(_) => out.push((prefix.to_string(), Value::String(v.to_string()))),
        _ => out.push((prefix.to_string(), v.clone())),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A flat table built from JSON rows: nested objects become `outer_inner`
/// columns, arrays are kept as JSON text.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn from_values(values: &[Value], leading: &[&str]) -> Self {
        let flat: Vec<Vec<(String, Value)>> = values
            .iter()
            .map(|v| {
                let mut out = Vec::new();
                flatten_into("", v, &mut out);
                out
            })
            .collect();
        let mut columns: Vec<String> = leading
            .iter()
            .filter(|c| flat.iter().any(|r| r.iter().any(|(k, _)| k == *c)))
            .map(|c| c.to_string())
            .collect();
        for row in &flat {
            for (k, _) in row {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
        let rows = flat
            .iter()
            .map(|row| {
                columns
                    .iter()
                    .map(|c| {
                        row.iter()
                            .find(|(k, _)| k == c)
                            .map(|(_, v)| cell(v))
                            .unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        Self { columns, rows }
    }

    fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().context("flushing csv")
    }
}

pub fn render(doc: &ReportDocument, table: &Table, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(doc)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => table.to_csv(),
    }
}

pub fn emit(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("--out: cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}
