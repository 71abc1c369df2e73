//! Structural comparison of a report with a stored golden report.

use std::path::Path;

use serde_json::Value;

use crate::report::Report;

#[derive(Debug, thiserror::Error)]
pub enum GoldenError {
    #[error("cannot read golden file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("golden file {path} does not parse: {source}")]
    Parse { path: String, source: serde_json::Error },
}

/// Keys dropped before comparing.
const IGNORED: [&str; 2] = ["runtime_ms", "version"];

fn strip(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for key in IGNORED {
                map.remove(key);
            }
            map.values_mut().for_each(strip);
        }
        Value::Array(items) => items.iter_mut().for_each(strip),
        _ => {}
    }
}

fn walk(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            for k in keys {
                let sub = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => walk(&sub, u, v, out),
                    (Some(_), None) => out.push(format!("{sub}: missing from golden")),
                    (None, Some(_)) => out.push(format!("{sub}: missing from report")),
                    (None, None) => unreachable!(),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                out.push(format!("{path}: length {} vs {} in golden", x.len(), y.len()));
            }
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                walk(&format!("{path}[{i}]"), u, v, out);
            }
        }
        _ if a != b => out.push(format!("{path}: {a} vs {b} in golden")),
        _ => {}
    }
}

/// Field-path differences between two report values, ignoring runtimes
/// and versions. Empty means equal.
pub fn diff_values(report: &Value, golden: &Value) -> Vec<String> {
    let (mut a, mut b) = (report.clone(), golden.clone());
    strip(&mut a);
    strip(&mut b);
    let mut out = Vec::new();
    walk("", &a, &b, &mut out);
    out
}

pub fn load_golden(path: &Path) -> Result<Value, GoldenError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| GoldenError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| GoldenError::Parse { path: path.display().to_string(), source })
}

/// Compares `report` with the golden file at `path`.
pub fn diff_golden(report: &Report, path: &Path) -> Result<Vec<String>, GoldenError> {
    let golden = load_golden(path)?;
    let value = serde_json::to_value(report).expect("report serializes");
    Ok(diff_values(&value, &golden))
}
