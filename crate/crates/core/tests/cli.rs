use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn odiam(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odiam"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_analyze_orient_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(odiam(&["gen", "circulant", "--n", "20", "--offsets", "1,2", "-o", "c.graph"], d).status.success());

    let a = odiam(&["analyze", "c.graph", "--json"], d);
    assert!(a.status.success());
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["n"], 20);
    assert_eq!(v["m"], 40);
    assert_eq!(v["girth"], 3);
    assert_eq!(v["bridgeless"], true);

    let o = odiam(
        &["orient", "c.graph", "--epsilon", "1/2", "--emit", "c.orient", "--trace", "c.jsonl", "--json"],
        d,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["invariants_hold"], true);
    let achieved = v["bound"]["achieved_diameter"].as_u64().unwrap();
    assert_eq!(v["extension"]["full_diameter"].as_u64(), Some(achieved));
    assert_eq!(fs::read_to_string(d.join("c.orient")).unwrap().lines().count(), 41);

    let r = odiam(&["verify", "c.jsonl", "--graph", "c.graph", "--orientation", "c.orient"], d);
    assert!(r.status.success(), "{}", stdout(&r));
    assert!(stdout(&r).lines().all(|l| l.starts_with("pass ")));

    // Tampering with one recorded size must be caught.
    let text = fs::read_to_string(d.join("c.jsonl")).unwrap();
    let bad = text.replacen("\"full_diameter\":", "\"full_diameter\":1", 1);
    fs::write(d.join("bad.jsonl"), bad).unwrap();
    assert_eq!(odiam(&["verify", "bad.jsonl", "--graph", "c.graph"], d).status.code(), Some(4));
}

#[test]
fn oracle_prints_optimum_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(odiam(&["gen", "petersen", "-o", "p.graph"], d).status.success());
    let o = odiam(&["oracle", "p.graph", "--jobs", "2", "--emit", "p.orient"], d);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("optimum: 6\n"));
    assert_eq!(fs::read_to_string(d.join("p.orient")).unwrap().lines().count(), 16);
    assert_eq!(odiam(&["oracle", "p.graph", "--budget", "10"], d).status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k2.graph"), "2 1\n0 1\n").unwrap();
    fs::write(d.join("junk.graph"), "3 x\n").unwrap();
    fs::write(d.join("loop.graph"), "3 1\n1 1\n").unwrap();
    assert_eq!(odiam(&["orient", "k2.graph"], d).status.code(), Some(3));
    assert_eq!(odiam(&["analyze", "junk.graph"], d).status.code(), Some(2));
    assert_eq!(odiam(&["analyze", "loop.graph"], d).status.code(), Some(2));
    assert_eq!(odiam(&["analyze", "missing.graph"], d).status.code(), Some(2));
    assert_eq!(odiam(&["gen", "hypercube", "--n", "3"], d).status.code(), Some(2));
    assert_eq!(odiam(&["gen", "cycle"], d).status.code(), Some(2));
}

#[test]
fn profile_and_experiment_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(odiam(&["gen", "--profile", "tiny", "--seed", "3", "-o", "tiny"], d).status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("tiny/manifest.json")).unwrap()).unwrap();
    let graphs = manifest["graphs"].as_array().unwrap();
    assert!(graphs.len() >= 15);
    for g in graphs {
        assert!(d.join("tiny").join(g["file"].as_str().unwrap()).exists());
    }

    let e = odiam(&["experiment", "tiny", "--epsilon", "1", "--out", "t.csv", "--jobs", "2"], d);
    assert!(e.status.success(), "{}", String::from_utf8_lossy(&e.stderr));
    let mut rd = csv::Reader::from_path(d.join("t.csv")).unwrap();
    let headers = rd.headers().unwrap().clone();
    for col in ["graph", "h", "L", "total_bound_floor", "achieved", "oracle", "surmacs_bound", "pass"] {
        assert!(headers.iter().any(|h| h == col), "missing column {col}");
    }
    let pass = headers.iter().position(|h| h == "pass").unwrap();
    let rows: Vec<_> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), graphs.len());
    assert!(rows.iter().all(|r| &r[pass] == "true"));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("t.json")).unwrap()).unwrap();
    assert_eq!(summary["failed"], 0);
}
