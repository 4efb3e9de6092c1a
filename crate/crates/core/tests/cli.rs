use std::process::{Command, Output};

use ks33::report::Report;

fn ks33(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ks33")).args(args).output().expect("run ks33")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_commands_exit_zero() {
    for args in [
        &["verify"][..],
        &["verify", "--set", "penrose"],
        &["verify", "--set", "family", "--gamma", "0.7", "--samples", "10"],
        &["prove", "--mode", "both"],
        &["critical", "--ray", "1"],
        &["majorana", "--samples", "50"],
    ] {
        let o = ks33(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).contains("OK:"), "{args:?}");
    }
}

#[test]
fn argument_errors_exit_two() {
    for args in [&["critical", "--ray", "40"][..], &["catalog", "--set", "nope"], &["majorana", "--samples", "0"], &["verify", "--tol", "-1"]] {
        assert_eq!(ks33(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failing_check_exits_one_with_counterexample() {
    // A tolerance this loose makes every pair "orthogonal".
    let o = ks33(&["--json", "verify", "--set", "family", "--alpha", "0.3", "--tol", "2"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn json_reports_roundtrip_byte_identical() {
    for args in [&["--json", "prove"][..], &["--json", "verify", "--set", "penrose"], &["--json", "majorana", "--samples", "20"]] {
        let text = stdout(&ks33(args));
        let text = text.trim_end();
        let report = Report::from_json(text).unwrap();
        assert_eq!(report.to_json(), text, "{args:?}");
        assert!(report.passed);
        assert_eq!(report.schema_version, 1);
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "--seed", "9", "verify", "--set", "family", "--samples", "20"];
    assert_eq!(stdout(&ks33(&args)), stdout(&ks33(&args)));
    let a = stdout(&ks33(&["--json", "--seed", "1", "majorana", "--samples", "20"]));
    let b = stdout(&ks33(&["--json", "--seed", "2", "majorana", "--samples", "20"]));
    assert_ne!(a, b);
}

#[test]
fn catalog_outputs() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&ks33(&["catalog", "--set", "peres"]))).unwrap();
    assert_eq!(json["entries"].as_array().unwrap().len(), 33);
    assert_eq!(json["entries"][0]["components"][0]["exact"], "1");
    let pen: serde_json::Value = serde_json::from_str(&stdout(&ks33(&["catalog", "--set", "penrose"]))).unwrap();
    assert_eq!(pen["entries"][9]["doubled"], true);
    let fam: serde_json::Value =
        serde_json::from_str(&stdout(&ks33(&["catalog", "--set", "family", "--gamma", "0.7"]))).unwrap();
    assert!((fam["k_modulus"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let csv = stdout(&ks33(&["catalog", "--set", "penrose", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 34);
    assert!(csv.starts_with("index,class,m1_x"));
}

#[test]
fn export_cnf_files() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.cnf");
    let o = ks33(&["export-cnf", "--out", full.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&full).unwrap();
    assert!(text.starts_with("c "));
    assert!(text.contains("c deleted: none\np cnf 33 88\n1 2 3 0\n"));
    let del = dir.path().join("d1.cnf");
    assert_eq!(ks33(&["export-cnf", "--out", del.to_str().unwrap(), "--delete", "1"]).status.code(), Some(0));
    let parsed = ks33::cnf::Cnf::parse_dimacs(&std::fs::read_to_string(&del).unwrap()).unwrap();
    assert_eq!(parsed.clauses.len(), 76);
    let bad = dir.path().join("missing/dir/x.cnf");
    assert_eq!(ks33(&["export-cnf", "--out", bad.to_str().unwrap()]).status.code(), Some(1));
}
