use std::process::{Command, Output};

use serde_json::Value;

fn homocalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homocalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = homocalc(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(&o).trim()).expect("one JSON record")
}

#[test]
fn homology_s3_degree_3() {
    let o = homocalc(&["homology", "S3", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("= Z/6"), "{text}");
    assert!(text.contains("primary: [2, 3]"), "{text}");
}

#[test]
fn homology_record_schema() {
    let v = json(&["homology", "S3", "3", "--res", "bar"]);
    assert_eq!(v["command"], "homology");
    assert_eq!(v["group"], "S3");
    assert_eq!(v["degree"], 3);
    assert_eq!(v["coefficients"], "Z");
    assert_eq!(v["resolution"], "bar");
    assert_eq!(v["invariants"]["free_rank"], 0);
    assert_eq!(v["invariants"]["torsion"], serde_json::json!([6]));
    assert_eq!(v["primary"], serde_json::json!([2, 3]));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn records_are_reproducible() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = strip(json(&["cohomology", "D4", "2", "--coeff", "Z/2"]));
    let b = strip(json(&["cohomology", "D4", "2", "--coeff", "Z/2"]));
    assert_eq!(a, b);
    assert_eq!(a["invariants"]["torsion"], serde_json::json!([2, 2, 2]));
}

#[test]
fn poincare_c2() {
    let o = homocalc(&["poincare", "C2", "2", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1 1 1 1 1 1 1 1 1 1");
}

#[test]
fn schur_small_groups() {
    assert_eq!(json(&["schur", "C2xC2"])["invariants"]["torsion"], serde_json::json!([2]));
    assert_eq!(json(&["schur", "S3"])["invariants"]["torsion"], serde_json::json!([]));
}

#[test]
fn induced_isomorphism() {
    let v = json(&[
        "induced",
        "--src",
        "perm:[(1,2,3),(1,2)]",
        "--tgt",
        "perm:[(1,2,3),(2,3)]",
        "--images",
        "(1,2,3),(2,3)",
        "--degree",
        "3",
    ]);
    assert_eq!(v["image"]["torsion"], serde_json::json!([6]));
    assert_eq!(v["domain"]["torsion"], serde_json::json!([6]));
}

#[test]
fn resolution_dump_and_verify() {
    let v = json(&["res", "C3", "--kind", "bar", "--depth", "2", "--dump"]);
    assert_eq!(v["ranks"], serde_json::json!([1, 3, 9]));
    assert_eq!(v["boundaries"][0].as_array().unwrap().len(), 3);
    let v = json(&["verify", "Q8", "--kind", "nbar", "--depth", "3"]);
    assert_eq!(v["ok"], true);
}

#[test]
fn oracle_matches_pipeline() {
    let a = json(&["oracle", "h2", "C4", "--coeff", "Z/2"]);
    let b = json(&["cohomology", "C4", "2", "--coeff", "Z/2"]);
    assert_eq!(a["invariants"], b["invariants"]);
}

#[test]
fn parse_errors_exit_2() {
    let o = homocalc(&["homology", "C(", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(homocalc(&["homology", "S3", "1", "--coeff", "Q"]).status.code(), Some(2));
    assert_eq!(homocalc(&["homology", "S3"]).status.code(), Some(2));
}

#[test]
fn refusals_exit_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_homocalc"))
        .args(["homology", "S4", "3"])
        .env("HOMOCALC_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("rank 529"), "{err}");
}
