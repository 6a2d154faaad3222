use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const FIG2_R: &str = r#"{"source":["1","2"],"target":["4","5"],"monoid":"rational","edges":[
 {"s":"1","t":"4","w":{"monoid":"rational","num":2,"den":1}},
 {"s":"1","t":"5","w":{"monoid":"rational","num":3,"den":1}},
 {"s":"2","t":"4","w":{"monoid":"rational","num":5,"den":1}},
 {"s":"2","t":"5","w":{"monoid":"rational","num":7,"den":1}}]}"#;

fn triskell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triskell"))
        .args(args)
        .output()
        .unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn passing_suite_exits_zero() {
    let o = triskell(&["check", "thm5.1", "--trials", "100", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["passed"], 100);
    assert_eq!(report["counterexample"], Value::Null);
    assert!(stderr(&o).contains("100/100"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = triskell(&[
            "check",
            "mll-invariance",
            "--trials",
            "40",
            "--seed",
            "9",
            "--out",
            s(out),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = triskell(&["check", "thm9.9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));
}

#[test]
fn oversized_bounds_are_rejected() {
    let o = triskell(&["check", "thm3.1", "--max-size", "40"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bound"));
}

#[test]
fn corrupted_run_exits_one_with_counterexample() {
    let o = triskell(&["check", "thm3.6", "--trials", "10", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["counterexample"]["detail"]
        .as_str()
        .unwrap()
        .contains("t="));
}

#[test]
fn dot_export_has_one_arrow_per_edge() {
    let dir = TempDir::new().unwrap();
    let t = file(&dir, "t.json", FIG2_R);
    let out = dir.path().join("t.dot");
    let o = triskell(&["convert", s(&t), s(&out), "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = fs::read_to_string(&out).unwrap();
    assert_eq!(dot.matches("->").count(), 4);
    assert!(dot.contains(r#""s:2" -> "t:5" [label="7"]"#));

    let back = triskell(&["convert", s(&out), s(&dir.path().join("x.json"))]);
    assert_eq!(back.status.code(), Some(2));
}

#[test]
fn json_round_trip_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let t = file(&dir, "t.json", FIG2_R);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(triskell(&["convert", s(&t), s(&a)]).status.code(), Some(0));
    assert_eq!(triskell(&["convert", s(&a), s(&b)]).status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn malformed_json_reports_a_location() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", "{\"edges\": [1,\n");
    let o = triskell(&["convert", s(&bad), s(&dir.path().join("x.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn fock_of_the_two_by_two_relation() {
    let dir = TempDir::new().unwrap();
    let t = file(&dir, "t.json", FIG2_R);
    let m = dir.path().join("m.json");
    assert_eq!(
        triskell(&["eval", "contract", s(&t), "--out", s(&m)])
            .status
            .code(),
        Some(0)
    );
    let o = triskell(&["eval", "fock", s(&m)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let f: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows: Vec<&str> = f["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let cols: Vec<&str> = f["cols"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let at = |r: &str, c: &str| {
        let i = rows.iter().position(|x| *x == r).unwrap();
        let j = cols.iter().position(|x| *x == c).unwrap();
        f["entries"][i][j].as_str().unwrap().to_string()
    };
    assert_eq!(at("{}", "{}"), "1");
    assert_eq!(at("{1}", "{4}"), "2");
    assert_eq!(at("{2}", "{5}"), "7");
    assert_eq!(at("{1,2}", "{4,5}"), "-1");
    assert_eq!(at("{1,2}", "{4}"), "0");
}

#[test]
fn interpretation_of_a_proof() {
    let dir = TempDir::new().unwrap();
    let proof = file(&dir, "p.mll", "cut(ax(X), ax(X))\n");
    let atoms = file(&dir, "a.json", r#"{"atoms":{"X":2}}"#);
    let o = triskell(&[
        "eval",
        "interpret",
        "--model",
        "ig",
        s(&proof),
        "--atoms",
        s(&atoms),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["edges"].as_array().unwrap().len(), 4);

    let o = triskell(&[
        "eval",
        "interpret",
        "--model",
        "wr",
        s(&proof),
        "--atoms",
        s(&atoms),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("entries"));

    let o = triskell(&["eval", "normalize", s(&proof)]);
    assert_eq!(stdout(&o).trim(), "ax(X)");
}

#[test]
fn execution_and_cycles() {
    let dir = TempDir::new().unwrap();
    let chain = file(
        &dir,
        "c.json",
        r#"{"source":["a","u"],"target":["b","u"],"monoid":"rational","edges":[
          {"s":"a","t":"u","w":{"monoid":"rational","num":2,"den":1}},
          {"s":"u","t":"b","w":{"monoid":"rational","num":3,"den":1}}]}"#,
    );
    let o = triskell(&["eval", "exec", s(&chain), "--cut", "u"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["edges"][0]["w"]["num"], 6);

    let cyc = file(
        &dir,
        "y.json",
        r#"{"source":["u"],"target":["u"],"monoid":"rational","edges":[
          {"s":"u","t":"u","w":{"monoid":"rational","num":1,"den":1}}]}"#,
    );
    let o = triskell(&["eval", "exec", s(&cyc), "--cut", "u"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cycle"), "{}", stderr(&o));
}

#[test]
fn scalar_results() {
    let dir = TempDir::new().unwrap();
    let t = file(&dir, "t.json", FIG2_R);
    let sq = file(
        &dir,
        "s.json",
        r#"{"source":["x"],"target":["x"],"monoid":"rational","edges":[
          {"s":"x","t":"x","w":{"monoid":"rational","num":1,"den":2}}]}"#,
    );
    let o = triskell(&["eval", "trm", s(&sq)]);
    assert_eq!(stdout(&o).trim(), "1/2");
    assert_eq!(triskell(&["eval", "detm", s(&t)]).status.code(), Some(2));
}
