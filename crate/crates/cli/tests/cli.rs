use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tuttebound::graph::BruteLimits;
use tuttebound::sp::parse_sp;
use tuttebound::tutte::chromatic_poly;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tuttebound"))
        .args(args)
        .env_remove("TUTTEBOUND_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn rho_table_matches_published_values() {
    let out = run(&["region", "rho-table", "--lambda-max", "10"]);
    assert!(out.status.success());
    let want = [
        [1.0, 1.0, 1.0, 1.0],
        [0.376086, 0.333333, 2.658967, 3.0],
        [0.240380, 0.219471, 4.160076, 4.556417],
        [0.177591, 0.165204, 5.630929, 6.053134],
        [0.141038, 0.132841, 7.090297, 7.527812],
        [0.117041, 0.111213, 8.544040, 8.991750],
        [0.100054, 0.095697, 9.994599, 10.449611],
        [0.087388, 0.084008, 11.443181, 11.903688],
        [0.077577, 0.074877, 12.890449, 13.355246],
    ];
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,rho_star,rho_double_star,inv_rho_star,inv_rho_double_star"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    for (k, (row, w)) in rows.iter().zip(want).enumerate() {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells[0], (k + 2) as f64);
        for (got, w) in cells[1..].iter().zip(w) {
            assert!((got - w).abs() <= 1e-6, "row {row}: {got} vs {w}");
        }
    }
}

#[test]
fn diamond_chromatic_polynomial_matches_brute_force() {
    let dsl = "P(S(e,e),S(e,e))";
    let out = run(&["tutte", "chromatic", "--dsl", dsl]);
    assert!(out.status.success());
    let v = json(&out);
    let (g, _) = parse_sp(dsl).unwrap();
    let brute = chromatic_poly(&g.graph, BruteLimits::default()).unwrap();
    let want: Vec<Value> = brute.to_decimal_strings().into_iter().map(Value::String).collect();
    assert_eq!(v["coefficients"], Value::Array(want));
    assert_eq!(v["coefficients"], serde_json::json!(["0", "-3", "6", "-4", "1"]));
}

#[test]
fn counterexample_witness() {
    let out = run(&["region", "counterexample"]);
    assert!(out.status.success());
    let v = json(&out);
    let d = v["witness_distance"].as_f64().unwrap();
    assert!((d - 2.009462).abs() < 1e-6, "{d}");
    assert_eq!(v["h_vertices"], 94);
    assert_eq!(v["validated"], true);
}

#[test]
fn graph_files_and_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.json");
    // three parallel paths of length two between 0 and 1
    fs::write(&path, r#"{"vertices": 5, "edges": [[0,2],[2,1],[0,3],[3,1],[0,4],[4,1]], "s": 0, "t": 1}"#).unwrap();
    let p = path.to_str().unwrap();
    let flow = json(&run(&["flow", "--graph", p]));
    assert_eq!(flow["maxmaxflow"], 3);
    let tree = json(&run(&["sp", "decompose", "--graph", p]));
    assert_eq!(tree["series_parallel"], true);
    assert_eq!(tree["maximal"], true);
    let root = tree["root"].as_u64().unwrap() as usize;
    assert_eq!(tree["nodes"][root]["flow"], 3);

    let k4 = dir.path().join("k4.json");
    fs::write(&k4, r#"{"vertices": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]], "s": 0, "t": 1}"#).unwrap();
    let v = json(&run(&["sp", "decompose", "--graph", k4.to_str().unwrap()]));
    assert_eq!(v["series_parallel"], false);
    // not series-parallel, so the polynomial comes from the subset expansion
    let v = json(&run(&["tutte", "chromatic", "--graph", k4.to_str().unwrap()]));
    assert_eq!(v["coefficients"], serde_json::json!(["0", "-6", "11", "-6", "1"]));
}

#[test]
fn roots_of_an_integer_polynomial() {
    // (q - 1)^2 (q + 2)
    let out = run(&["roots", "solve", "--coeffs", "2,-3,0,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,residual,multiplicity"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().any(|r| (r[0] + 2.0).abs() < 1e-12 && r[1].abs() < 1e-12));
    assert_eq!(rows.iter().filter(|r| (r[0] - 1.0).abs() < 1e-6).count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["flow", "--dsl", "S(e,"]).status.code(), Some(2));
    assert_eq!(run(&["region", "grid", "--q", "1.5", "--lambda", "7"]).status.code(), Some(2));
    assert_eq!(run(&["region", "certify", "--q", "1+x", "--lambda", "3"]).status.code(), Some(2));
    assert_eq!(run(&["leaftree", "roots", "--n", "3", "--tol", "0"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let missing = run(&["flow", "--graph", "/nonexistent/graph.json"]);
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("reading /nonexistent/graph.json"));
}

#[test]
fn manifest_is_written_next_to_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/rho.csv");
    let res = run(&["region", "rho-table", "--lambda-max", "4", "--out", out.to_str().unwrap()]);
    assert!(res.status.success());
    assert!(res.stdout.is_empty());
    assert!(fs::read_to_string(&out).unwrap().starts_with("lambda,"));
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("nested/rho.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["lambda_max"], 4);
    assert_eq!(manifest["exit_code"], 0);
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn certify_reports_and_audits() {
    let v = json(&run(&["region", "certify", "--q", "4.9", "--lambda", "3", "--mode", "wheatstone", "--samples", "500"]));
    assert_eq!(v["certificate"]["certified"], true);
    assert_eq!(v["audit"]["passed"], true);
    let v = json(&run(&["region", "certify", "--q", "2+i", "--lambda", "3"]));
    assert_eq!(v["certificate"]["certified"], false);
    assert!(v["audit"].is_null());
}

#[test]
fn thread_count_does_not_change_output() {
    let cases: [&[&str]; 3] = [
        &["region", "grid", "--q", "1+2.2i", "--lambda", "3", "--resolution", "64"],
        &["leaftree", "roots", "--n", "5"],
        &["region", "boundary", "--samples", "8"],
    ];
    for args in cases {
        let one = Command::new(env!("CARGO_BIN_EXE_tuttebound")).args(args).env("TUTTEBOUND_THREADS", "1").output().unwrap();
        let four = Command::new(env!("CARGO_BIN_EXE_tuttebound")).args(["--threads", "4"]).args(args).output().unwrap();
        assert!(one.status.success() && four.status.success(), "{args:?}");
        assert!(!one.stdout.is_empty());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}
