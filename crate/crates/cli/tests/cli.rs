use std::io::Write as _;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsdesign"))
        .env_remove("QSDESIGN_FORMAT")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().expect("exit code"))
}

fn condition<'a>(report: &'a Value, label: &str) -> &'a Value {
    report["conditions"]
        .as_array()
        .expect("conditions array")
        .iter()
        .find(|c| c["label"] == label)
        .unwrap_or_else(|| panic!("no condition {label}"))
}

fn temp_graph(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(text.as_bytes()).expect("write");
    f
}

#[test]
fn steiner_3_10_is_rejected_at_2() {
    let (r, code) = json(&[
        "check", "--family", "steiner", "--n", "3", "--m", "10", "--mu", "2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "rejected");
    let h = condition(&r, "hasse-invariant");
    assert_eq!(h["passed"], false);
    assert!(h["witness"].as_str().unwrap().starts_with("fails at p=2"));
    assert_eq!(condition(&r, "steiner-b")["passed"], false);
}

#[test]
fn petersen_spectrum_gives_six_point_design() {
    let (r, code) = json(&[
        "check", "--rho", "1", "--sigma", "-2", "--f", "5", "--g", "4", "--mu", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "feasible");
    let p = &r["parameters"][0];
    assert_eq!(
        (p["v"].as_str(), p["k"].as_str(), p["lambda"].as_str()),
        (Some("6"), Some("3"), Some("2"))
    );
    assert_eq!(p["b"], "10");
}

#[test]
fn affine_plane_of_order_three_is_feasible() {
    // K_{4x3} with defect 1 is the block graph of AG(2,3), quadruple (1, 0, 1, 0).
    let (r, code) = json(&[
        "check",
        "--family",
        "multipartite",
        "--m",
        "4",
        "--n",
        "3",
        "--mu",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "feasible");
    assert_eq!(r["parameters"][0]["v"], "9");
    assert_eq!(r["parameters"][0]["k"], "3");
}

#[test]
fn infeasible_defect_exits_one() {
    let (r, code) = json(&[
        "check",
        "--family",
        "multipartite",
        "--m",
        "4",
        "--n",
        "3",
        "--mu",
        "2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "infeasible");
    assert!(r["parameters"].is_null());
}

#[test]
fn json_schema_shape() {
    let args = [
        "--format", "json", "derive", "--family", "steiner", "--n", "3", "--m", "15", "--mu", "2",
    ];
    let text = stdout(&run(&args));
    let r: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["conditions", "parameters", "query", "verdict"]);
    let at = |k: &str| text.find(&format!("\n  \"{k}\"")).unwrap();
    assert!(
        at("query") < at("verdict")
            && at("verdict") < at("conditions")
            && at("conditions") < at("parameters")
    );
    for c in r["conditions"].as_array().unwrap() {
        assert!(c["label"].is_string() && c["passed"].is_boolean());
        assert!(c["witness"].is_null() || c["witness"].is_string());
    }
    let pair = r["parameters"].as_array().unwrap();
    assert_eq!(pair.len(), 2);
    for p in pair {
        let mut fields: Vec<&str> = p.as_object().unwrap().keys().map(String::as_str).collect();
        fields.sort_unstable();
        assert_eq!(
            fields,
            ["b", "k", "lambda", "lambda1", "lambda2", "mu", "nu", "r", "v"]
        );
        assert!(p.as_object().unwrap().values().all(Value::is_string));
    }
}

#[test]
fn symmetric_examples() {
    let (r, code) = json(&["symmetric", "--v", "43", "--k", "7", "--lambda", "1"]);
    assert_eq!((code, r["verdict"].as_str()), (1, Some("reject")));
    assert!(r["conditions"][0]["witness"]
        .as_str()
        .unwrap()
        .contains("p=3"));

    let (r, code) = json(&["symmetric", "--v", "22", "--k", "7", "--lambda", "2"]);
    assert_eq!((code, r["verdict"].as_str()), (1, Some("reject")));

    let (r, code) = json(&["symmetric", "--v", "7", "--k", "3", "--lambda", "1"]);
    assert_eq!((code, r["verdict"].as_str()), (0, Some("pass")));

    let (_, code) = json(&["symmetric", "--v", "15", "--lambda", "3", "--nu", "4"]);
    assert_eq!(code, 0);
}

#[test]
fn inconsistent_symmetric_parameters_are_usage_errors() {
    let o = run(&["symmetric", "--v", "10", "--k", "4", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn graph_files() {
    let petersen = temp_graph("IheA@GUAo\n");
    let (r, code) = json(&[
        "graph",
        petersen.path().to_str().unwrap(),
        "--input",
        "graph6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["discriminant"], "5");
    assert_eq!(r["spectral"]["vertices"], "10");
    assert!(!r["hasse"].as_array().unwrap().is_empty());

    let octahedron = temp_graph(
        "0 1 1 1 1 0\n1 0 1 1 0 1\n1 1 0 0 1 1\n1 1 0 0 1 1\n1 0 1 1 0 1\n0 1 1 1 1 0\n",
    );
    let (r, code) = json(&["graph", octahedron.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["discriminant"], "3");

    let p4 = temp_graph("0 1 0 0\n1 0 1 0\n0 1 0 1\n0 0 1 0\n");
    let o = run(&["graph", p4.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not strongly regular"));
}

#[test]
fn malformed_graph_is_usage_error() {
    let bad = temp_graph("0 1\n1 x\n");
    let o = run(&["graph", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn table_csv_columns_and_rejections() {
    let o = run(&["--format", "csv", "table1"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("number,n,m,v,k,lambda,lambda1,lambda2,verdict")
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first, ["1", "3", "10", "21", "9", "12", "3", "5", "no"]);

    let o = run(&["--format", "csv", "table1", "--max-n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qsdesign"))
        .env("QSDESIGN_FORMAT", "csv")
        .args(["table1", "--max-n", "3"])
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("number,n,m,"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "table1"][..],
        &["sieve", "multipartite"][..],
        &[
            "--format",
            "csv",
            "check",
            "--family",
            "symplectic",
            "--d",
            "3",
            "--mu",
            "2",
        ][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn conference_input_is_diagnosed() {
    let o = run(&["check", "--family", "conference", "--q", "13", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conference"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["check", "--mu", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", "--family", "steiner", "--n", "3", "--mu", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "--family", "steiner", "--n", "3", "--m", "1o", "--mu", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn large_arguments_survive() {
    let (r, _) = json(&["derive", "--family", "symplectic", "--d", "40", "--mu", "1"]);
    assert_eq!(r["query"]["mu"], "1");
    let (r, _) = json(&[
        "hilbert",
        "--a",
        "170141183460469231731687303715884105727",
        "--b",
        "-1",
    ]);
    assert!(r["verdict"].is_string());
}

#[test]
fn hilbert_symbols() {
    let (r, code) = json(&["hilbert", "--a", "-1", "--b", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "unsolvable");
    let (r, _) = json(&["hilbert", "--a", "2", "--b", "3", "--p", "3"]);
    assert_eq!(r["verdict"], "-1");
}

#[test]
fn sieves_list_known_members() {
    let o = run(&[
        "--format", "csv", "sieve", "steiner", "--n", "3", "--mu", "2", "--max-m", "40",
    ]);
    let text = stdout(&o);
    assert!(text.contains("S_3(10),m=10,2,21,9,12,70,30,3,5,no"));
    assert!(text.contains("S_3(15),m=15,2,31,7,7,155,35,1,3,pass"));
    let o = run(&[
        "--format",
        "csv",
        "sieve",
        "cotriangular",
        "--mu",
        "1",
        "--limit",
        "3",
    ]);
    assert_eq!(stdout(&o).lines().count(), 4);
}
