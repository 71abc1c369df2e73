//! The suite report and its JSON form.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::checks::Status;
use crate::config::{CheckKind, ScalarMode};

pub const ENGINE_NAME: &str = "vircalc";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Engine {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub kind: CheckKind,
    pub status: Status,
    pub data: Value,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub finding: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub engine: Engine,
    pub config_digest: String,
    pub mode: ScalarMode,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
}

/// Hex SHA-256 of the raw configuration bytes.
pub fn config_digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl Report {
    /// Sorts the records by name and fills in the summary.
    pub fn new(config_text: &str, mode: ScalarMode, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Finding => summary.finding += 1,
            }
        }
        Report {
            engine: Engine { name: ENGINE_NAME.into(), version: ENGINE_VERSION.into() },
            config_digest: config_digest(config_text),
            mode,
            summary,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check plus a summary line.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Finding => "NOTE",
            };
            out.push_str(&format!("{tag:<4} {} [{}] {} ms", c.name, c.kind.as_str(), c.runtime_ms));
            if let Some(e) = c.data.get("error").and_then(Value::as_str) {
                out.push_str(&format!(": {e}"));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!("{} checks: {} pass, {} fail, {} finding\n", s.total, s.pass, s.fail, s.finding));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn record(name: &str, status: Status) -> CheckRecord {
        CheckRecord { name: name.into(), kind: CheckKind::Identities, status, data: json!({}), runtime_ms: 3 }
    }

    #[test]
    fn sorted_and_summarized() {
        let r = Report::new("{}", ScalarMode::Concrete, vec![record("b", Status::Fail), record("a", Status::Pass)]);
        assert_eq!(r.checks[0].name, "a");
        assert_eq!(r.summary, Summary { total: 2, pass: 1, fail: 1, finding: 0 });
        assert!(!r.all_passed());
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn empty_report_passes() {
        let r = Report::new("", ScalarMode::Generic, Vec::new());
        assert!(r.all_passed());
        assert_eq!(r.config_digest, "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
