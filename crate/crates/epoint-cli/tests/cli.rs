//! End-to-end checks of the `epoint` binary: exit codes, output shapes
//! and file emission.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(sub: &str, cfg: &str, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epoint"))
        .arg(sub)
        .arg("--config")
        .arg(fixture(cfg))
        .args(extra)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn find_ep_agrees_on_valid_model() {
    let out = run("find-ep", "find_ep.json", &[]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "epoint/1");
    assert_eq!(v["agreement"], true);
    assert_eq!(v["random_check"]["all_ok"], true);
    assert_eq!(v["random_check"]["count"], 25);
}

#[test]
fn find_ep_seed_flag_overrides_config() {
    let a = run("find-ep", "find_ep.json", &["--seed", "11"]);
    let b = run("find-ep", "find_ep.json", &[]);
    assert_eq!(exit_code(&a), 0);
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(va["random_check"]["seed"], 11);
    assert_eq!(vb["random_check"]["seed"], 7);
}

#[test]
fn vector_reports_both_branches() {
    let out = run("vector", "vector.json", &[]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let branches = v["branches"].as_array().unwrap();
    assert_eq!(branches.len(), 2);
    assert_eq!(branches[0]["branch"], "plus");
    assert_eq!(branches[1]["branch"], "minus");
    for b in branches {
        assert!(b["self_orthogonality"].as_f64().unwrap() < 1e-10);
        assert!(b["vector"]["upper"]["re"].is_number());
    }
}

#[test]
fn sweep_emits_full_grid() {
    let out = run("sweep", "sweep.json", &[]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 17); // header + 16 rows
    assert!(lines[0].starts_with("tau1,status,re_lambda_plus"));
    assert!(lines[1].contains(",ok,"));
}

#[test]
fn encircle_writes_summary_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("loop.json");
    let out = run(
        "encircle",
        "encircle.json",
        &["--out", out_path.to_str().unwrap()],
    );
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["schema"], "epoint/1");
    // the loop encloses exactly one EP, so the branches must swap
    assert_eq!(v["permutation"], "swap");
    assert_eq!(v["double_loop"]["restored"], true);
    let csv = std::fs::read_to_string(dir.path().join("loop.json.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "step,re_lambda,im_lambda,re_E1,im_E1,re_E2,im_E2");
    assert_eq!(lines.len(), 1 + 129); // header + steps + closing point
}

#[test]
fn malformed_config_exits_1_with_position() {
    let out = run("find-ep", "bad_syntax.json", &[]);
    assert_eq!(exit_code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "stderr: {err}");
}

#[test]
fn commuting_model_exits_2() {
    let out = run("find-ep", "commuting.json", &[]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("commute"), "stderr: {err}");
}

#[test]
fn empty_grid_exits_1() {
    let out = run("sweep", "empty_grid.json", &[]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn loop_crossing_ep_exits_4() {
    let out = run("encircle", "loop_through_ep.json", &[]);
    assert_eq!(exit_code(&out), 4);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("path degeneracy") || err.contains("tracking"), "stderr: {err}");
}

#[test]
fn missing_section_exits_1() {
    let out = run("sweep", "vector.json", &[]);
    assert_eq!(exit_code(&out), 1);
    let out = run("encircle", "vector.json", &[]);
    assert_eq!(exit_code(&out), 1);
}
