//! Acceptance criterion for the binary: the full JSON report is
//! byte-identical across repeated runs with the same input, sequentially
//! and in parallel.

use std::process::{Command, Output};

const SUITE: &str = r#"{
  "spec_version": 1,
  "group": { "kind": "SL", "n": 2 },
  "elements": {
    "J": [["1", "1"], ["0", "1"]],
    "D": [["2", "0"], ["0", "1/2"]],
    "R": [["0", "1"], ["-1", "0"]],
    "I": [["1", "0"], ["0", "1"]],
    "M4": [["4", "0"], ["0", "1/4"]]
  },
  "presentations": {
    "ptorus": { "generators": 2, "relators": [], "boundary_words": ["abAB"] },
    "torus": { "generators": 2, "relators": ["abAB"] },
    "pants": { "generators": 2, "relators": [], "boundary_words": ["a", "b", "BA"] }
  },
  "representations": {
    "rho": { "presentation": "ptorus", "images": ["D", "R"] },
    "triv": { "presentation": "torus", "images": ["I", "I"] },
    "legs": { "presentation": "pants", "images": ["D", "R"] }
  },
  "tasks": [
    { "task": "classify_pair", "left": "J", "right": "J" },
    { "task": "classify_pair", "left": "D", "right": "M4" },
    { "task": "strict_scan", "family": "diagonal", "count": 12, "seed": 2024 },
    { "task": "strict_scan", "family": "unipotent_diagonal_pair", "count": 12, "seed": 2024 },
    { "task": "tangent", "representation": "rho" },
    { "task": "sphere", "dimension": 3 },
    { "task": "restriction", "representation": "legs" },
    { "task": "relative", "representation": "rho" },
    { "task": "goldman", "representation": "triv" },
    { "task": "bivector", "representation": "rho" },
    { "task": "leaf", "representation": "rho", "targets": [{ "class_rep": "M4" }] },
    { "task": "double_point_leaf", "left": "D", "right": "M4" }
  ]
}"#;

fn run(path: &std::path::Path, extra: &[&str]) -> Output {
    let mut args = vec!["run", path.to_str().expect("utf8 path")];
    args.extend_from_slice(extra);
    Command::new(env!("CARGO_BIN_EXE_charstack"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_13_repeated_runs_emit_byte_identical_reports() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("suite.json");
    std::fs::write(&path, SUITE).expect("fixture written");

    let first = run(&path, &["--format", "json"]);
    assert!(
        first.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&first.stderr)
    );
    let second = run(&path, &["--format", "json"]);
    let parallel = run(&path, &["--format", "json", "--parallel"]);
    assert_eq!(first.stdout, second.stdout, "sequential runs diverge");
    assert_eq!(first.stdout, parallel.stdout, "parallel run diverges");
    assert!(!first.stdout.is_empty());
    println!(
        "[PASS] criterion 13: {} bytes of JSON identical across sequential and parallel runs",
        first.stdout.len()
    );
}
