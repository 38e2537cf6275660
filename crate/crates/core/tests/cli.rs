//! End-to-end tests of the `resenv` binary: exit codes, report formats,
//! determinism, and refusal paths, all through real subprocesses.

use resenv::verify::fixtures::fixture_path;
use std::path::Path;
use std::process::{Command, Output};

fn resenv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resenv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn resenv_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resenv"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn fixture(stem: &str) -> String {
    fixture_path(stem).display().to_string()
}

#[test]
fn perfect_field_json_report_passes() {
    let out = resenv(&[
        "verify",
        "perfect-field",
        "--m",
        "2",
        "--r",
        "2",
        "--seed",
        "7",
        "--report",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(body["schema"], 1);
    assert_eq!(body["scenario"], "perfect-field");
    assert_eq!(body["status"], "pass");
    let checks = body["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    for check in checks {
        assert!(check["anchor"].as_str().unwrap().len() > 4);
        assert_eq!(check["pass"], true);
    }
}

#[test]
fn zero_rank_is_a_usage_error() {
    let out = resenv(&["verify", "perfect-field", "--m", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn degree_budget_env_override_refuses_deep_runs() {
    let out = resenv_with_env(
        &["verify", "perfect-field", "--m", "2", "--r", "3"],
        "RESENV_DEGREE_BUDGET",
        "10",
    );
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("degree budget"), "{err}");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "verify",
        "perfect-field",
        "--m",
        "1",
        "--r",
        "2",
        "--trials",
        "5",
        "--seed",
        "99",
        "--report",
        "json",
    ];
    let first = resenv(&args);
    let second = resenv(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = resenv(&[
        "verify",
        "torus-chain",
        "--k",
        "2",
        "--p",
        "2",
        "--report",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["scenario"], "torus-chain");
    assert_eq!(body["status"], "pass");
}

#[test]
fn validate_accepts_shipped_fixtures() {
    for stem in ["heisenberg_p2", "mixed_torus", "sl2_p3", "toral_f4"] {
        let out = resenv(&["validate", "--algebra", &fixture(stem)]);
        assert_eq!(code(&out), 0, "{stem}");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("[PASS]"), "{text}");
    }
}

#[test]
fn validate_flags_axiom_violations_with_exit_one() {
    // [x, y] = x with x^[2] = x violates ad-compatibility:
    // ad(x^[2]) = ad(x) but ad(x)^2 = 0 on y.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{
  "name": "bad",
  "p": 2,
  "vars": [],
  "basis": ["x", "y"],
  "brackets": [{actually_invalid}
"#,
    )
    .unwrap();
    let out = resenv(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "malformed JSON is a usage error");

    std::fs::write(
        &path,
        r#"{
  "name": "bad",
  "p": 2,
  "vars": [],
  "basis": ["x", "y"],
  "brackets": [{"i": 0, "j": 1, "coeffs": {"x": "1"}}],
  "pmap": {"x": {"x": "1"}}
}
"#,
    )
    .unwrap();
    let out = resenv(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "axiom failure is a check failure");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[FAIL]"), "{text}");
}

#[test]
fn missing_algebra_file_is_a_usage_error() {
    let out = resenv(&[
        "verify",
        "semiperfect-abelian",
        "--algebra",
        "/nonexistent/nowhere.json",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn radical_certificate_fields_are_reported() {
    let out = resenv(&[
        "radical",
        "--algebra",
        &fixture("heisenberg_p2"),
        "--report",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let witness = &body["checks"][0]["witness"];
    assert_eq!(witness["dimension"], 7);
    assert_eq!(witness["generators"].as_array().unwrap().len(), 7);
    assert!(witness["nilpotency_index"].as_u64().unwrap() >= 2);
    assert_eq!(witness["trail"]["method"], "structural-p-nil-ideal");
}

#[test]
fn radical_refuses_unsupported_classes() {
    let out = resenv(&["radical", "--algebra", &fixture("sl2_p3")]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(!err.is_empty());
}

#[test]
fn locally_finite_scenario_over_files() {
    let out = resenv(&[
        "verify",
        "locally-finite",
        "--algebra",
        &fixture("mixed_torus"),
        "--gens",
        "w",
        "--report",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["status"], "pass");
    assert_eq!(body["parameters"]["algebra"], "mixed_torus");

    let out = resenv(&[
        "verify",
        "locally-finite",
        "--algebra",
        &fixture("mixed_torus"),
        "--gens",
        "x",
    ]);
    assert_eq!(code(&out), 2, "toral generator must be refused");
}

#[test]
fn free_module_defaults_cover_the_first_two_generators() {
    let out = resenv(&[
        "verify",
        "free-module",
        "--algebra",
        &fixture("heisenberg_p2"),
        "--report",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["parameters"]["subalgebra"], serde_json::json!(["x"]));
    assert_eq!(
        body["parameters"]["chain"],
        serde_json::json!(["x", "y"])
    );
}

#[test]
fn semiperfect_abelian_over_files() {
    let out = resenv(&[
        "verify",
        "semiperfect-abelian",
        "--algebra",
        &fixture("split_torus_k2_p2"),
        "--report",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let out = resenv(&[
        "verify",
        "semiperfect-abelian",
        "--algebra",
        &fixture("borel2"),
    ]);
    assert_eq!(code(&out), 2, "nonabelian input is refused");

    let out = resenv(&[
        "verify",
        "semiperfect-abelian",
        "--algebra",
        &fixture("toral_f4"),
    ]);
    assert_eq!(code(&out), 2, "non-split toral quotient is refused");
}

#[test]
fn torus_chain_char_three() {
    let out = resenv(&["torus-chain", "--k", "1", "--p", "3", "--report", "json"]);
    assert_eq!(code(&out), 0);
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["status"], "pass");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&resenv(&["--help"])), 0);
    assert_eq!(code(&resenv(&["--version"])), 0);
    assert_eq!(code(&resenv(&["verify", "--help"])), 0);
}

#[test]
fn text_report_is_the_default() {
    let out = resenv(&["verify", "torus-chain", "--k", "1", "--p", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS] T1"), "{text}");
    assert!(text.contains("status: pass"), "{text}");
}

#[test]
fn fixture_paths_exist() {
    assert!(Path::new(&fixture("heisenberg_p2")).exists());
}
