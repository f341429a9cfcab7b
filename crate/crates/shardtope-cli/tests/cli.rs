use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shardtope")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn fails_with(args: &[&str], code: i32) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}");
    let err: Value = serde_json::from_str(String::from_utf8(o.stderr).unwrap().trim()).unwrap();
    assert!(err["error"].is_string());
    err
}

#[test]
fn arc_lists() {
    assert_eq!(ok(&["arcs", "list", "--n", "3"]).lines().count(), 4);
    assert_eq!(ok(&["arcs", "list", "--n", "5"]).lines().count(), 26);
    assert_eq!(ok(&["arcs", "list", "--n", "2", "--type", "b"]).lines().count(), 6);
    // each of the two short arcs is a subarc of both long ones
    assert_eq!(ok(&["arcs", "poset", "--n", "3"]).lines().count(), 4);
}

#[test]
fn loday_associahedron() {
    let v = json(&["quotientope", "build", "--ideal", "sylvester(4)"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 14);
    assert_eq!(v["kind"], "A");
    assert_eq!(v["n"], 4);
    assert_eq!(ok(&["quotientope", "rays", "--ideal", "sylvester(4)"]).lines().count(), 9);
}

#[test]
fn z_of_s_matrix() {
    let v = json(&["basis", "matrix", "--which", "z_of_s", "--n", "3"]);
    assert_eq!(v["index"], serde_json::json!(["1,2", "2,3", "1,2,3", "1,3"]));
    let rows: Vec<Vec<&str>> =
        v["rows"].as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()).collect();
    let want = [["1", "0", "0", "1"], ["0", "1", "0", "1"], ["1", "1", "1", "2"], ["0", "0", "0", "1"]];
    assert_eq!(rows, want);
    let v = json(&["basis", "matrix", "--which", "z_of_s", "--n", "4", "--minpoly"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
    assert!(v["minimal_polynomial"].is_string());
}

#[test]
fn ideal_files_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ideal.txt");
    fs::write(&path, ok(&["ideal", "close", "--n", "4", "--arcs", "1-3|A=2|B="])).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["quotientope", "verify", "--ideal", p]);
    assert_eq!(v["partition"], true);
    assert_eq!(v["rays"], true);
    assert_eq!(v["classes"], json(&["ideal", "classes", "--ideal", p])["classes"]);

    let w = dir.path().join("w.json");
    fs::write(&w, r#"{"1-3|A=2|B=": "5/2"}"#).unwrap();
    let v = json(&["quotientope", "verify", "--ideal", p, "--weights", w.to_str().unwrap()]);
    assert_eq!(v["partition"], true);
    fs::write(&w, r#"{"1-3|A=2|B=": "0"}"#).unwrap();
    fails_with(&["quotientope", "build", "--ideal", p, "--weights", w.to_str().unwrap()], 2);

    // a set that is not closed under forcing is rejected
    fs::write(&path, "n=3\n1-3|A=2|B=\n").unwrap();
    fails_with(&["quotientope", "build", "--ideal", p], 2);
}

#[test]
fn type_b_commands() {
    let seed = ok(&["ideal", "close", "--n", "2", "--type", "b", "--arcs", "-1-2|A=1|B="]);
    assert!(seed.starts_with("n=2\ntype=B\n"));
    assert_eq!(ok(&["ideal", "enumerate", "--n", "2", "--type", "b", "--count"]).trim(), "19");
    let v = json(&["quotientope", "verify", "--ideal", "full(2)", "--type", "b"]);
    assert_eq!(v["classes"], 8);
    let v = json(&["shard", "poly", "--arc", "-1-2|A=1|B=", "--n", "2", "--type", "b"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn polytope_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    fs::write(&path, ok(&["shard", "poly", "--arc", "1-4|A=2|B=3", "--n", "4"])).unwrap();
    let p = path.to_str().unwrap();
    let geo = ok(&["volume", "oracle", "--polytope", p]);
    let comb = ok(&["volume", "shard", "--n", "4", "--arcs", "1-4|A=2|B=3"]);
    assert_eq!(comb.trim(), format!("1-4|A=2|B=3\t{}", geo.trim()));
    let s = json(&["basis", "decompose", "--polytope", p, "--to", "s"]);
    assert_eq!(s["entries"], serde_json::json!({"1,2,4": "1"}));

    let y = dir.path().join("y.json");
    fs::write(&y, ok(&["basis", "decompose", "--polytope", p, "--to", "y"])).unwrap();
    let back = json(&["basis", "convert", "--from", "y", "--to", "s", "--in", y.to_str().unwrap()]);
    assert_eq!(back, s);
    fails_with(&["basis", "convert", "--from", "z", "--to", "s", "--in", y.to_str().unwrap()], 2);

    let svg = dir.path().join("p.svg");
    fs::write(&path, ok(&["shard", "poly", "--arc", "1-3|A=2|B=", "--n", "3"])).unwrap();
    ok(&["render", "polytope2d", "--in", p, "--svg", svg.to_str().unwrap()]);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    ok(&["render", "arc", "--in", "-2-2|A=-1|B=1", "--n", "2", "--type", "b", "--svg", svg.to_str().unwrap()]);
    assert!(fs::read_to_string(&svg).unwrap().contains("<path"));
}

#[test]
fn height_functions() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["ps-quotientope", "--ideal", "sylvester(4)", "--f", "default", "--check"]);
    let f = dir.path().join("f.json");
    // constant functions fail forcing dominance
    let values: Vec<String> = ["1,2", "1,3", "2,3", "1,2,3"].iter().map(|k| format!("\"{k}\": \"1\"")).collect();
    fs::write(&f, format!("{{\"n\": 3, \"values\": {{{}}}}}", values.join(", "))).unwrap();
    let err = fails_with(&["ps-quotientope", "--ideal", "full(3)", "--f", f.to_str().unwrap()], 2);
    assert!(err["error"].as_str().unwrap().contains("forcing dominant"));
}

#[test]
fn volumes() {
    assert_eq!(ok(&["volume", "mixed", "--n", "3", "--arcs", "1-2|A=|B=", "2-3|A=|B="]).trim(), "1/2");
    fails_with(&["volume", "mixed", "--n", "3", "--arcs", "1-2|A=|B="], 2);
}

#[test]
fn exit_codes() {
    fails_with(&["arcs", "list", "--n", "40"], 3);
    fails_with(&["ideal", "enumerate", "--n", "4", "--type", "b"], 3);
    fails_with(&["verify", "all", "--n", "9"], 3);
    fails_with(&["shard", "poly", "--arc", "3-1|A=|B=", "--n", "3"], 2);
    fails_with(&["quotientope", "build", "--ideal", "/no/such/file"], 2);
    fails_with(&["frobnicate"], 2);
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_suite_is_deterministic() {
    let a = ok(&["verify", "all", "--n", "3", "--seed", "11"]);
    assert_eq!(a, ok(&["verify", "all", "--n", "3", "--seed", "11"]));
    assert!(a.starts_with("seed 11\n"));
    assert!(a.lines().skip(1).all(|l| l.starts_with("PASS ")));
    let b = ok(&["verify", "all", "--n", "2", "--type", "b"]);
    assert!(b.lines().any(|l| l.starts_with("PASS fan.partition: 19 ideals")));
    assert!(!b.contains("FAIL"));
}
