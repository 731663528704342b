//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test -p fockport-cli --test acceptance -- --nocapture`
//! to see the lines.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fockport_cli::config::ReproduceConfig;
use fockport_cli::criteria::{self, Outcome};
use fockport_cli::CliError;

fn check(f: fn(&ReproduceConfig) -> Result<Outcome, CliError>, limit: Option<Duration>) {
    let start = Instant::now();
    let outcome = f(&ReproduceConfig::default()).expect("criterion evaluates");
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let passed = outcome.passed && in_time;
    println!(
        "criterion {} {}: {}: {} [{:.2} s{}]",
        outcome.id,
        if passed { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.summary,
        elapsed.as_secs_f64(),
        limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default(),
    );
    assert!(outcome.passed, "criterion {} failed: {}", outcome.id, outcome.summary);
    assert!(in_time, "criterion {} exceeded its time limit", outcome.id);
}

#[test]
fn criterion_01_attenuation_exactness() {
    check(criteria::attenuation_exactness, Some(Duration::from_secs(1)));
}

#[test]
fn criterion_02_closed_form_equivalence() {
    check(criteria::closed_form_equivalence, Some(Duration::from_secs(30)));
}

#[test]
fn criterion_03_classical_bound() {
    check(criteria::classical_bound, None);
}

#[test]
fn criterion_04_qubit_independence() {
    check(criteria::qubit_independence, None);
}

#[test]
fn criterion_05_optimal_gain_location() {
    check(criteria::optimal_gain_location, None);
}

#[test]
fn criterion_06_loss_envelope() {
    check(criteria::loss_envelope, None);
}

#[test]
fn criterion_07_multiphoton_suppression() {
    check(criteria::multiphoton_suppression, None);
}

#[test]
fn criterion_08_conditional_teleportation() {
    check(criteria::conditional_teleportation, None);
}

#[test]
fn criterion_09_tomography_round_trip() {
    check(criteria::tomography_round_trip, Some(Duration::from_secs(300)));
}

fn reproduce_into(dir: &Path) {
    let status = Command::new(env!("CARGO_BIN_EXE_fockport"))
        .args(["reproduce", "--out"])
        .arg(dir)
        .output()
        .expect("binary runs");
    assert!(
        matches!(status.status.code(), Some(0) | Some(1)),
        "reproduce errored: {}",
        String::from_utf8_lossy(&status.stderr)
    );
}

#[test]
fn criterion_10_deterministic_reproduction() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    reproduce_into(a.path());
    reproduce_into(b.path());
    let manifest_a = std::fs::read(a.path().join("manifest.json")).unwrap();
    let manifest_b = std::fs::read(b.path().join("manifest.json")).unwrap();
    let mut identical = manifest_a == manifest_b;
    for entry in std::fs::read_dir(a.path()).unwrap() {
        let name = entry.unwrap().file_name();
        identical &= std::fs::read(a.path().join(&name)).unwrap()
            == std::fs::read(b.path().join(&name)).unwrap();
    }
    println!(
        "criterion 10 {}: deterministic reproduction: manifests of two runs {}",
        if identical { "PASS" } else { "FAIL" },
        if identical { "are byte-identical" } else { "differ" }
    );
    assert!(identical);
}
