use std::path::Path;
use std::process::{Command, Output};

fn qcanon(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qcanon"));
    cmd.args(args).env_remove("QCANON_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("QCANON_CACHE_DIR", dir);
    }
    cmd.output().expect("spawn qcanon")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn canon_reproduces_the_rank_two_example() {
    let out = qcanon(&["canon", "--cartan", "C", "--n", "2", "--lambda", "1/2,-1/2", "--cutoff", "6", "--kind", "t"], None);
    let v = json(&out);
    let col = v["column"].as_array().unwrap();
    assert_eq!(col.len(), 2);
    let q2 = col.iter().find(|e| e["weight"] == "-1/2,1/2").unwrap();
    assert_eq!(q2["poly"]["coeffs"], serde_json::json!([[2, 1]]));
    assert_eq!(v["kind"], "t");
}

#[test]
fn compare_a_vs_b_is_equal() {
    let v = json(&qcanon(&["compare", "--route", "a-vs-b", "--n", "2", "--cutoff", "6"], None));
    assert_eq!(v["verdict"], "EQUAL");
}

#[test]
fn euler_character_of_rank_one() {
    let v = json(&qcanon(&["char", "--n", "1", "--lambda", "1/2"], None));
    assert_eq!(v, serde_json::json!({"monomials": [{"exp": [1], "coeff": 2}]}));
}

#[test]
fn invalid_input_exits_one() {
    let bad_type = qcanon(&["canon", "--cartan", "B", "--n", "2", "--lambda", "1/2,-1/2", "--cutoff", "3", "--kind", "t"], None);
    assert_eq!(bad_type.status.code(), Some(1));
    let bad_n = qcanon(&["canon", "--cartan", "C", "--n", "3", "--lambda", "1/2,-1/2", "--cutoff", "3", "--kind", "t"], None);
    assert_eq!(bad_n.status.code(), Some(1));
    let outside = qcanon(&["bar", "--cartan", "C", "--n", "1", "--lambda", "9/2", "--cutoff", "2"], None);
    assert_eq!(outside.status.code(), Some(1));
    assert_eq!(qcanon(&["no-such-command"], None).status.code(), Some(1));
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["wedge", "--n", "2", "--cutoff", "3"];
    let cold = qcanon(&args, Some(dir.path()));
    assert!(cold.status.success());
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let warm = qcanon(&args, Some(dir.path()));
    assert_eq!(cold.stdout, warm.stdout);
    // a different window is a different key
    let other = qcanon(&["wedge", "--n", "2", "--cutoff", "4"], Some(dir.path()));
    assert!(other.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn outputs_are_deterministic_across_thread_policies() {
    let a = qcanon(&["canon", "--cartan", "B", "--n", "2", "--cutoff", "3", "--kind", "l"], None);
    let b = qcanon(&["--sequential", "canon", "--cartan", "B", "--n", "2", "--cutoff", "3", "--kind", "l"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_tables() {
    let out = qcanon(&["canon", "--cartan", "C", "--n", "2", "--cutoff", "2", "--kind", "t", "--format", "csv"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("mu,la,poly,provisional\n"));
    assert!(text.contains("\"-1/2,1/2\",\"1/2,-1/2\",\"q^2\",false"), "{text}");
}

#[test]
fn kgroup_commands() {
    let v = json(&qcanon(&["kgroup", "translate", "--i", "0", "--lambda", "1/2", "--dir", "e"], None));
    assert_eq!(v["verma"]["entries"], serde_json::json!([{"weight": "-1/2", "mult": 2}]));
    let v = json(&qcanon(&["kgroup", "verify", "--n", "2", "--cutoff", "3"], None));
    assert_eq!(v["verdict"], "EQUAL");
    let v = json(&qcanon(&["kgroup", "tilting", "--lambda", "1/2,-1/2", "--cutoff", "3"], None));
    assert_eq!(v["conjectural"], true);
    assert!(v["caveat"].as_str().unwrap().contains("correction"));
}

#[test]
fn scan_reports_a_negative_coefficient_for_b4() {
    let v = json(&qcanon(&["scan-positivity", "--cartan", "B", "--n", "4", "--to", "4"], None));
    assert!(v["witness"].is_object());
    assert_eq!(v["exhausted"], false);
}

#[test]
fn fixtures_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&qcanon(&["fixtures", "--dir", dir.path().to_str().unwrap()], None));
    let files = v["written"].as_array().unwrap();
    assert_eq!(files.len(), 5);
    for f in files {
        assert!(Path::new(f.as_str().unwrap()).exists());
    }
}
