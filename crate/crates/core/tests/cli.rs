//! The `fockna` binary, judged by exit codes and machine output only.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fockna::cli::RunReport;

fn fockna(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockna")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    fockna(args).status.code().unwrap()
}

fn json(args: &[&str]) -> RunReport {
    let mut full = args.to_vec();
    full.push("--json");
    let out = fockna(&full);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bounded = write(dir.path(), "a.json", r#"{"n": 1, "A": [[[0.5, 0]]], "b": [[1, 0]]}"#);
    let translation = write(dir.path(), "t.json", r#"{"n": 1, "A": [[[1, 0]]], "b": [[1, 0]]}"#);
    let linear = write(dir.path(), "l.json", r#"{"n": 2, "A": [[[0.3, 0], [0, 0]], [[0, 0], [0, 0.7]]], "b": [[0, 0], [0, 0]]}"#);
    let broken = write(dir.path(), "x.json", r#"{"n": 2, "A": [[[0.5, 0]]], "b": [[1, 0]]}"#);

    assert_eq!(code(&["classify", &bounded]), 0);
    assert_eq!(code(&["classify", &translation]), 3);
    assert_eq!(code(&["norm", &translation]), 3);
    assert_eq!(code(&["classify", &broken]), 2);
    assert_eq!(code(&["classify", "/no/such/file.json"]), 2);

    let r = json(&["classify", &bounded]);
    assert_eq!(r.exit_status, 0);
    let s = r.symbol.unwrap();
    assert!((s.norm.unwrap() - (2.0f64 / 3.0).exp()).abs() < 1e-12);
    assert!(s.primal && s.dual && s.carswell && s.compact);

    let r = json(&["norm", &linear]);
    assert_eq!(r.symbol.unwrap().norm, Some(1.0));

    let r = json(&["classify", &translation]);
    let s = r.symbol.unwrap();
    assert!(!s.bounded && s.log_norm.is_none());
}

#[test]
fn tolerance_flags_are_used() {
    let dir = tempfile::tempdir().unwrap();
    let sym = write(dir.path(), "a.json", r#"{"n": 1, "A": [[[1.000000001, 0]]], "b": [[0, 0]]}"#);
    assert_eq!(code(&["classify", &sym]), 3);
    let r = json(&["classify", &sym, "--tol-compare", "1e-6"]);
    assert_eq!(r.exit_status, 0);
    assert_eq!(r.tolerances.compare_rel, 1e-6);
    assert_eq!(code(&["classify", &sym, "--tol-rank", "0"]), 2);
}

#[test]
fn json_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sym = write(dir.path(), "a.json", r#"{"n": 1, "A": [[[0.5, 0]]], "b": [[1, 0]]}"#);
    let out = fockna(&["verify", &sym, "--max-degree", "5", "--json"]);
    let report: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    let again: RunReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
    assert_eq!(report.convergence.unwrap().rows.len(), 6);
}

#[test]
fn shift_examples_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let ns = dir.path().join("ns");
    let ws = dir.path().join("ws");
    assert_eq!(code(&["example", "nilpotent-shift", "--dim", "3", "--out-dir", ns.to_str().unwrap()]), 0);
    assert_eq!(code(&["example", "weighted-shift", "--mu", "0.5", "--dim", "4", "--out-dir", ws.to_str().unwrap()]), 0);
    for d in [&ns, &ws] {
        for f in ["symbol.json", "pair.json", "witness.json", "NOTE.txt"] {
            assert!(d.join(f).exists(), "{f}");
        }
    }
    let p = |d: &Path, f: &str| d.join(f).to_str().unwrap().to_string();

    let r = json(&["check-extremal", &p(&ns, "symbol.json"), &p(&ns, "pair.json"), "--side", "adjoint"]);
    assert_eq!(r.exit_status, 0);
    assert!(r.sum_kernel_check.unwrap().implication_holds);

    let r = json(&["check-extremal", &p(&ws, "symbol.json"), &p(&ws, "pair.json")]);
    assert_eq!(r.exit_status, 4);
    assert!(r.extremality.unwrap().eigen_residual_rel >= 0.01);
    let check = r.sum_kernel_check.unwrap();
    assert!((check.norm_phi_x1 - check.norm_phi_x2).abs() <= 1e-12);

    let s = json(&["classify", &p(&ws, "symbol.json")]).symbol.unwrap();
    assert!((s.norm.unwrap().powi(2) - 5.0f64.exp()).abs() < 1e-9);

    for d in [&ns, &ws] {
        assert_eq!(code(&["check-extremal", &p(d, "symbol.json"), &p(d, "witness.json")]), 0);
    }
}

#[test]
fn check_extremal_dimension_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let sym = write(dir.path(), "a.json", r#"{"n": 1, "A": [[[0.5, 0]]], "b": [[1, 0]]}"#);
    let f = write(dir.path(), "f.json", r#"{"dim": 2, "terms": [{"coeff": [1, 0], "point": [[0, 0], [0, 0]]}]}"#);
    assert_eq!(code(&["check-extremal", &sym, &f]), 2);
}

#[test]
fn composition_side() {
    let dir = tempfile::tempdir().unwrap();
    let sym = write(dir.path(), "a.json", r#"{"n": 1, "A": [[[0.5, 0]]], "b": [[1, 0]]}"#);
    // (1 - a^2) w = b gives w = 4/3
    let f = write(dir.path(), "f.json", r#"{"dim": 1, "terms": [{"coeff": [1, 0], "point": [[1.3333333333333333, 0]]}]}"#);
    assert_eq!(code(&["check-extremal", &sym, &f, "--side", "composition"]), 0);
    assert_eq!(code(&["check-extremal", &sym, &f, "--side", "adjoint"]), 4);
}

#[test]
fn verify_paths() {
    let dir = tempfile::tempdir().unwrap();
    let scalar = write(dir.path(), "a.json", r#"{"n": 1, "A": [[[0.5, 0]]], "b": [[1, 0]]}"#);
    let zero_b = write(dir.path(), "z.json", r#"{"n": 1, "A": [[[0.5, 0]]], "b": [[0, 0]]}"#);
    let translation = write(dir.path(), "t.json", r#"{"n": 1, "A": [[[1, 0]]], "b": [[1, 0]]}"#);
    let csv = dir.path().join("r.csv");

    let out = fockna(&["verify", &scalar, "--max-degree", "25", "--report", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("d,truncated_norm,exact_norm,relative_gap"));
    assert_eq!(text.lines().count(), 27);
    let last_gap: f64 = text.lines().last().unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!(last_gap.abs() <= 1e-6);

    let r = json(&["verify", &zero_b, "--max-degree", "5"]);
    assert_eq!(r.exit_status, 0);
    assert!(r.convergence.unwrap().rows.iter().all(|row| row.relative_gap == Some(0.0)));

    let r = json(&["verify", &translation, "--max-degree", "6"]);
    assert_eq!(r.exit_status, 3);
    let rows = r.convergence.unwrap().rows;
    assert!(rows.iter().all(|row| row.exact_norm.is_none()));
    assert!(rows.windows(2).all(|w| w[1].truncated_norm > w[0].truncated_norm));

    let big = write(dir.path(), "big.json", r#"{"n": 4, "A": [[[0.1,0],[0,0],[0,0],[0,0]],[[0,0],[0.1,0],[0,0],[0,0]],[[0,0],[0,0],[0.1,0],[0,0]],[[0,0],[0,0],[0,0],[0.1,0]]], "b": [[0,0],[0,0],[0,0],[0,0]]}"#);
    assert_eq!(code(&["verify", &big, "--max-degree", "30"]), 2);
}

#[test]
fn examples_round_trip_through_classify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["nilpotent-shift", "--dim", "3"],
        &["weighted-shift", "--mu", "0.5", "--dim", "4"],
        &["isometry-embedding", "--dim", "2"],
        &["scalar", "--a", "0.5", "--b", "1"],
        &["identity", "--dim", "2"],
    ];
    let expected = [0.5f64.exp(), 2.5f64.exp(), 0.5f64.exp(), (2.0f64 / 3.0).exp(), 1.0];
    for (i, (args, norm)) in cases.iter().zip(expected).enumerate() {
        let mut full = vec!["example"];
        full.extend_from_slice(args);
        let out = fockna(&full);
        assert_eq!(out.status.code(), Some(0));
        let path = write(dir.path(), &format!("{i}.json"), std::str::from_utf8(&out.stdout).unwrap());
        let s = json(&["classify", &path]).symbol.unwrap();
        assert!((s.norm.unwrap() - norm).abs() <= 1e-12 * norm, "{args:?}");
    }
    assert_eq!(code(&["example", "nonexistent"]), 2);
    assert_eq!(code(&["example", "weighted-shift", "--mu", "1.5"]), 2);
}
