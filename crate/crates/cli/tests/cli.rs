use std::path::Path;
use std::process::{Command, Output};

fn fockport(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockport")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn teleport_reports_default_setting() {
    let v = stdout_json(&fockport(&["teleport"]));
    let report = &v["report"];
    assert!(report["f_state"].as_f64().unwrap() > 0.5);
    assert!(report["f_qubit"].as_f64().unwrap() > 2.0 / 3.0);
    assert!(report.get("multiphoton").is_some());
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(v["output"]["modes"], 2);
}

#[test]
fn teleport_at_optimal_gain_is_attenuation() {
    let dir = tempfile::tempdir().unwrap();
    let g = 1.01f64.tanh();
    let cfg = write(
        dir.path(),
        "c.json",
        &format!(
            r#"{{"channel": {{"g": {g}, "r": 1.01, "l": 0.0}},
                "input": {{"eta": 1.0, "alpha": [0.6, 0.0], "beta": [0.0, 0.8]}},
                "cutoff": 6}}"#
        ),
    );
    let v = stdout_json(&fockport(&["teleport", "--config", &cfg]));
    let elements = v["output"]["elements"].as_array().unwrap();
    let d = 49;
    let at = |i: usize, j: usize| elements[i * d + j][0].as_f64().unwrap();
    // |0,1> is index 1, |1,0> is index 7 for seven levels per mode.
    assert!((at(0, 0) - (1.0 - g * g)).abs() < 1e-9);
    assert!((at(1, 1) - g * g * 0.36).abs() < 1e-9);
    assert!((at(7, 7) - g * g * 0.64).abs() < 1e-9);
    assert!((v["report"]["f_qubit"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn teleport_csv_has_hash_line() {
    let out = fockport(&["teleport", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config_hash: "));
    assert!(lines.next().unwrap().starts_with("f_state,f_qubit,f_thr"));
}

#[test]
fn malformed_config_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(fockport(&["teleport", "--config", &cfg]).status.code(), Some(2));
    let cfg = write(dir.path(), "unphysical.json", r#"{"channel": {"g": 1.5, "r": 1.0}}"#);
    assert_eq!(fockport(&["teleport", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(fockport(&["teleport", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn missing_config_file_is_io_error() {
    assert_eq!(fockport(&["teleport", "--config", "/nonexistent/c.json"]).status.code(), Some(3));
}

#[test]
fn sweep_writes_twelve_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = fockport(&["sweep-gain", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(out_dir.join("sweep_gain.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# config_hash: "));
    assert_eq!(lines[1], "r,g,f_state,f_qubit,f_thr,vacuum,qubit,multiphoton,success_prob");
    assert_eq!(lines.len(), 2 + 12);
}

#[test]
fn fine_sweep_has_interior_maximum() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "fine.json",
        r#"{"squeezing": [1.01], "fine": {"start": 0.5, "stop": 1.0, "step": 0.01}, "cutoff": 8}"#,
    );
    let out = fockport(&["sweep-gain", "--config", &cfg, "--format", "json"]);
    let v = stdout_json(&out);
    let sweep = &v["sweeps"][0];
    assert_eq!(sweep["points"].as_array().unwrap().len(), 51);
    let best = sweep["argmax_f_qubit"].as_f64().unwrap();
    assert!((best - 1.01f64.tanh()).abs() < 0.011, "{best}");
}

#[test]
fn empty_gain_grid_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "empty.json", r#"{"gains": []}"#);
    assert_eq!(fockport(&["sweep-gain", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn classical_bound_values() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"etas": [0.0, 0.693, 1.0], "trials": 20000}"#);
    let v = stdout_json(&fockport(&["classical-bound", "--config", &cfg, "--seed", "5"]));
    assert_eq!(v["seed"], 5);
    let rows = v["results"].as_array().unwrap();
    let f: Vec<f64> = rows.iter().map(|r| r["f"].as_f64().unwrap()).collect();
    assert!((f[0] - 1.0).abs() < 1e-12);
    assert!((f[1] - 0.769).abs() < 5e-4);
    assert!((f[2] - 2.0 / 3.0).abs() < 1e-9);
}

#[test]
fn seed_flag_changes_hash_only_through_config() {
    let a = stdout_json(&fockport(&["teleport", "--seed", "1"]));
    let b = stdout_json(&fockport(&["teleport", "--seed", "1"]));
    let c = stdout_json(&fockport(&["teleport", "--seed", "2"]));
    assert_eq!(a, b);
    assert_ne!(a["config_hash"], c["config_hash"]);
    assert_eq!(a["report"], c["report"]);
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_fockport"))
        .arg("teleport")
        .env("FOCKPORT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_fockport"))
        .arg("teleport")
        .env("FOCKPORT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reproduce_into_unwritable_directory_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let target = blocker.join("out");
    let out = fockport(&["reproduce", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(fockport(&["reproduce"]).status.code(), Some(2));
}

#[test]
fn lossless_reproduction_marks_envelope_informational() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "quick.json",
        r#"{"force_lossless": true, "mc_trials": 2000, "tomography_states": 1, "samples_per_phase": 2000}"#,
    );
    let out_dir = dir.path().join("out");
    let out = fockport(&["reproduce", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out_dir.join("manifest.json")).unwrap()).unwrap();
    let envelope = &manifest["criteria"][5];
    assert_eq!(envelope["id"], 6);
    assert_eq!(envelope["informational"], true);
    assert!(!manifest["failures"].as_array().unwrap().contains(&serde_json::json!(6)));
    let code = out.status.code().unwrap();
    assert_eq!(code, if manifest["failures"].as_array().unwrap().is_empty() { 0 } else { 1 });
    let table = std::fs::read_to_string(out_dir.join("loss_envelope.csv")).unwrap();
    assert!(table.starts_with("# config_hash: "));
}
