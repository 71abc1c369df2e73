use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn vircalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vircalc")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const BRACKET: &str = r#"{
  "schema": 1,
  "modules": { "om": { "kind": "omega", "lambda": "2", "alpha": "1", "h": "3*t + 1" } },
  "checks": [
    { "name": "b", "kind": "bracket-check", "module": "om", "window": [-5, 5], "caps": [4, 4] },
    { "name": "a", "kind": "identities", "binomial": { "r_max": 6, "factorial_r_max": 4 } }
  ]
}"#;

#[test]
fn empty_suite_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", r#"{"schema": 1}"#);
    let out = dir.path().join("r.json");
    let o = vircalc(&["--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["summary"]["total"], 0);
    assert_eq!(report["checks"], Value::Array(vec![]));
}

#[test]
fn bracket_check_record() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", BRACKET);
    let out = dir.path().join("r.json");
    let o = vircalc(&["--config", s(&cfg), "--out", s(&out), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let names: Vec<_> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["a", "b"]);
    assert_eq!(report["checks"][1]["status"], "pass");
    assert_eq!(report["checks"][1]["data"]["checked"], 25 * 55);
    assert_eq!(report["config_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn subcommand_filters_by_kind() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", BRACKET);
    let out = dir.path().join("r.json");
    let o = vircalc(&["identities", "--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["summary"]["total"], 1);
    assert_eq!(report["checks"][0]["kind"], "identities");
}

#[test]
fn zero_lambda_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", &BRACKET.replace(r#""lambda": "2""#, r#""lambda": "0""#));
    let o = vircalc(&["--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("modules.om.lambda") && err.contains("invertib"), "{err}");
}

#[test]
fn zero_binding_of_invertible_symbol() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"schema": 1,
      "parameters": {"symbols": [{"name": "lambda", "invertible": true}], "bindings": {"lambda": "0"}},
      "modules": {"om": {"kind": "omega", "lambda": "lambda", "alpha": "1", "h": "t"}}}"#;
    let cfg = write(&dir, "c.json", body);
    let o = vircalc(&["--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parameters.bindings.lambda"));
}

#[test]
fn schema_violation_reports_line_and_field() {
    let dir = TempDir::new().unwrap();
    let body = "{\n  \"schema\": 1,\n  \"checks\": [\n    {\"name\": \"x\", \"kind\": \"extract\", \"module\": 5, \"seeds\": []}\n  ]\n}";
    let cfg = write(&dir, "c.json", body);
    let o = vircalc(&["--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4") && err.contains("checks[0]"), "{err}");
}

#[test]
fn unknown_module_and_duplicate_names() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", &BRACKET.replace(r#""module": "om""#, r#""module": "nope""#));
    let o = vircalc(&["--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown module `nope`"));
    let cfg = write(&dir, "d.json", &BRACKET.replace(r#""name": "a""#, r#""name": "b""#));
    let o = vircalc(&["--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate check name"));
}

#[test]
fn failing_check_exits_one() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"schema": 1,
      "modules": {
        "s": {"kind": "omega", "lambda": "3", "alpha": "1", "h": "2*t"},
        "t": {"kind": "omega", "lambda": "3", "alpha": "3", "h": "t + 5"}},
      "checks": [{"name": "iso", "kind": "iso-check", "source": "s", "target": "t", "i_max": 1, "n_max": 1, "m_window": [-1, 1]}]}"#;
    let cfg = write(&dir, "c.json", body);
    let o = vircalc(&["--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL iso"));
}

#[test]
fn golden_files() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", BRACKET);
    let golden = dir.path().join("golden.json");
    assert_eq!(vircalc(&["--config", s(&cfg), "--out", s(&golden)]).status.code(), Some(0));

    let o = vircalc(&["--config", s(&cfg), "--golden", s(&golden), "--jobs", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("golden: match"));

    let text = std::fs::read_to_string(&golden).unwrap();
    let flipped = write(&dir, "flipped.json", &text.replacen(r#""status": "pass""#, r#""status": "fail""#, 1));
    let o = vircalc(&["--config", s(&cfg), "--golden", s(&flipped)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("checks[0].status"));

    let missing = dir.path().join("missing.json");
    assert_eq!(vircalc(&["--config", s(&cfg), "--golden", s(&missing)]).status.code(), Some(2));
    let broken = write(&dir, "broken.json", "{ not json");
    assert_eq!(vircalc(&["--config", s(&cfg), "--golden", s(&broken)]).status.code(), Some(2));
}

#[test]
fn mode_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"schema": 1, "scalar_mode": "concrete",
      "parameters": {"symbols": [{"name": "d"}], "bindings": {"d": "2"}},
      "checks": [{"name": "g", "kind": "identities", "gn": {"delta_eta": "d", "n_max": 6}}]}"#;
    let cfg = write(&dir, "c.json", body);
    let out = dir.path().join("r.json");
    assert_eq!(vircalc(&["--config", s(&cfg), "--out", s(&out), "--mode", "generic"]).status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["mode"], "generic");
    assert!(report["checks"][0]["data"]["gn"]["delta_eta"].is_array());
}
