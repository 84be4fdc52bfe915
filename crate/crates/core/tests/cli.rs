use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_busemann"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const TRIPOD_ATOM: &str = r#"{"point": {"space": "tree", "vertex": "x"}, "weight": "1"}"#;

#[test]
fn fixtures_report_every_value() {
    let out = run(&["fixtures"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let fixtures = report["fixtures"].as_array().unwrap();
    assert_eq!(fixtures.len(), 5);
    let code = out.status.code().unwrap();
    let all_pass = report["passed"].as_bool().unwrap();
    assert_eq!(code, if all_pass { 0 } else { 1 });
    let measured = |name: &str| {
        fixtures.iter().find(|f| f["name"] == name).unwrap()["measured"].as_f64().unwrap()
    };
    assert!((measured("tripod_bar4") - 5.0 / 6.0).abs() < 1e-9);
    assert!(measured("raro_cartan_center") < 1e-8);

    let csv = run(&["fixtures", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("name,expected,measured,tolerance,comparison,passed\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    for (cfg, sub, format) in [
        ("ergodic_tripod.json", "ergodic", "csv"),
        ("probe_maximal.json", "probe", "json"),
        ("bary_family.json", "bary", "json"),
    ] {
        let a = dir.path().join("a.out");
        let b = dir.path().join("b.out");
        for p in [&a, &b] {
            let s = run(&[sub, "--config", config(cfg).to_str().unwrap(), "--format", format, "--out", p.to_str().unwrap()]);
            assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stderr));
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{cfg}");
    }
}

#[test]
fn ergodic_csv_has_the_diagnostics_header() {
    let out = run(&["ergodic", "--config", config("ergodic_tripod.json").to_str().unwrap(), "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,point_serialized,distance_to_candidate"));
    let dist: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(dist.len(), 7);
    assert!(dist[6] < dist[0]);
}

#[test]
fn w1_of_a_measure_with_itself_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let m = format!(r#"{{"atoms": [{TRIPOD_ATOM}]}}"#);
    let cfg = write(
        dir.path(),
        "w1.json",
        &format!(r#"{{"command": "wasserstein", "space": {{"kind": "tripod", "ell": 1.0}}, "measure": {m}, "measure2": {m}}}"#),
    );
    let out = run(&["w1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["w1"].as_f64(), Some(0.0));
}

#[test]
fn single_atom_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "b.json",
        &format!(
            r#"{{"command": "barycenter", "space": {{"kind": "tripod", "ell": 1.0}}, "measure": {{"atoms": [{TRIPOD_ATOM}]}}}}"#
        ),
    );
    let out = run(&["bary", "--config", cfg.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // Vertices serialize as the far end of their parent edge.
    assert_eq!(v["point"]["edge"], serde_json::json!(["o", "x"]));
    assert_eq!(v["point"]["offset"].as_f64(), Some(1.0));
    assert_eq!(v["stop"], "exact");
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["bary"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["bary", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["bary", "--config", "/nonexistent/config.json"]).status.code(), Some(2));

    let bad = write(dir.path(), "bad.json", "{\n  \"command\": \"barycenter\",\n  \"space\": \n}");
    let out = run(&["bary", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let unknown = write(dir.path(), "unknown.json", r#"{"command": "barycenter", "spaces": {}}"#);
    let out = run(&["bary", "--config", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("spaces"));

    let out = run(&["w1", "--config", config("bary_tripod.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["bary", "--config", config("bary_tripod.json").to_str().unwrap(), "--tol", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "big.json",
        r#"{"command": "barycenter", "space": {"kind": "tripod", "ell": 1.0},
            "measure": {"atoms": [
              {"point": {"space": "tree", "vertex": "x"}, "weight": "1/97"},
              {"point": {"space": "tree", "vertex": "y"}, "weight": "96/97"}]}}"#,
    );
    assert_eq!(run(&["bary", "--config", cfg.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn flags_override_the_config() {
    let path = config("bary_family.json");
    let a = run(&["bary", "--config", path.to_str().unwrap(), "--tol", "1e-4"]);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["tolerance_used"].as_f64(), Some(1e-4));
    let t = run(&["probe", "--config", config("probe_temperedness.json").to_str().unwrap(), "--format", "csv"]);
    let text = String::from_utf8(t.stdout).unwrap();
    assert!(text.starts_with("n,union_size,window_size,ratio\n2,"));
}
