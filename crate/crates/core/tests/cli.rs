use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use crestimate::io::parse_json;
use crestimate::rearrange::rearrangement;
use crestimate::Function;

const BIN: &str = env!("CARGO_BIN_EXE_crestimate");

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("CRESTIMATE_THREADS", t),
        None => cmd.env_remove("CRESTIMATE_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const COMB1: &str = r#"{"type":"step","breakpoints":[0,1,2,3,4,5,6,7,8,9],"values":[1,0,1,0,1,0,1,0,1]}"#;
const BOX: &str = r#"{"type":"step","breakpoints":[0,1],"values":[1]}"#;
const TRIANGLE: &str = r#"{"type":"linear","nodes":[0,1,2],"node_values":[0,1,0]}"#;

#[test]
fn analyze_comb_certifies_two_crests() {
    let v = json(&run(&["analyze", COMB1], None));
    assert_eq!(v["crest_count"], 5);
    assert_eq!(v["certificate"]["crest_lower_bound"], 2);
    assert_eq!(v["certificate"]["root_lower_bound"], 1);
    assert_eq!(v["certificate"]["derived_root_bound"], 3);
    let notes = &v["comb"];
    assert_eq!(notes["n"], 1);
    assert!(notes["stated_points"][0]["abs_fhat"].as_f64().unwrap() < 1e-12);
    let q = notes["corrected_points"][3]["q"].as_f64().unwrap();
    assert!((q - 10f64.sqrt() / PI).abs() < 1e-9);
}

#[test]
fn analyze_box_is_trivial() {
    let v = json(&run(&["analyze", BOX], None));
    assert_eq!(v["crest_count"], 1);
    assert!(v["certificate"]["best_q"].as_f64().unwrap() < 1.0);
    assert_eq!(v["certificate"]["nontrivial"], false);
    assert!(v.get("comb").is_none());
}

#[test]
fn analyze_csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let o = run(
        &["analyze", BOX, "--grid", "0.5:2:4:lin", "--extra-z", "3.0", "--format", "csv", "--out", out.to_str().unwrap()],
        None,
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z,abs_fhat,tail_integral,bound,q");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("5.0000000000000000e-1,"));
    assert!(lines[5].starts_with("3.0000000000000000e0,"));
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 5);
    }
}

#[test]
fn output_is_byte_identical_across_thread_counts() {
    let a = run(&["analyze", COMB1, "--format", "csv"], Some("1"));
    let b = run(&["analyze", COMB1, "--format", "csv"], Some("4"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["verify", "decreasing", "--trials", "30", "--seed", "7"], Some("1"));
    let b = run(&["verify", "decreasing", "--trials", "30", "--seed", "7"], Some("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "decreasing", "--trials", "30", "--seed", "8"], Some("3"));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bad_thread_cap_is_a_validation_error() {
    let o = run(&["analyze", BOX], Some("zero"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn comb_magnitudes() {
    let z = format!("{},{},{}", PI, 2.0 * PI, 3.0 * PI);
    let v = json(&run(&["comb", "1", "--z", &z], None));
    let mags: Vec<f64> = v["requested"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["transform_magnitude"].as_f64().unwrap())
        .collect();
    assert!((mags[0] - 10.0 / PI).abs() < 1e-12);
    assert!(mags[1] < 1e-12);
    assert!((mags[2] - 10.0 / (3.0 * PI)).abs() < 1e-12);

    let z = format!("{}", 5.0 * PI);
    let v = json(&run(&["comb", "2", "--z", &z], None));
    let m = v["requested"][0]["transform_magnitude"].as_f64().unwrap();
    assert!((m - 4.0 / PI).abs() < 1e-12);

    assert_eq!(run(&["comb", "0"], None).status.code(), Some(1));
}

#[test]
fn verify_reports_suites() {
    let v = json(&run(&["verify", "step", "--trials", "50", "--seed", "42"], None));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks[0]["name"], "crest_bound");
    assert_eq!(checks[0]["violations"], 0);
    assert!(checks[0]["max_ratio"].as_f64().unwrap() < 1.0);
    let v = json(&run(&["verify", "one-crest", "--trials", "40", "--seed", "7"], None));
    assert_eq!(v["checks"][0]["violations"], 0);
    assert_eq!(run(&["verify", "step", "--trials", "0"], None).status.code(), Some(1));
}

#[test]
fn decreasing_suite_serializes_counterexamples_for_replay() {
    let v = json(&run(&["verify", "decreasing", "--trials", "40", "--seed", "7"], None));
    let half = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "sine_half_window")
        .unwrap();
    let ce = &half["counterexamples"][0];
    let f = parse_json(&ce["function"].to_string()).unwrap();
    assert!(f.is_decreasing_on_half_line());
}

#[test]
fn hardy_box_instance() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", BOX);
    let w = write(dir.path(), "w.json", BOX);
    let v = json(&run(&["hardy", &f, &w, &w, "--p", "2", "--q", "2"], None));
    assert!((v["fourier_weighted_norm"].as_f64().unwrap() - 0.986291413564290).abs() < 1e-6);
    assert!((v["chain_bound"].as_f64().unwrap() - 4.967294132898051).abs() < 1e-6);
    assert_eq!(v["chain_holds"], true);

    let bumpy = write(dir.path(), "g.json", r#"{"type":"step","breakpoints":[0,1,2],"values":[1,2]}"#);
    let o = run(&["hardy", &bumpy, &w, &w, "--p", "2", "--q", "2"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonincreasing"));
    let o = run(&["hardy", &f, &w, &w, "--p", "0", "--q", "2"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rearrange_round_trips() {
    for input in [COMB1, TRIANGLE, r#"{"type":"step","breakpoints":[2,3],"values":[1]}"#] {
        let o = run(&["rearrange", input], None);
        assert!(o.status.success());
        let text = stdout(&o);
        let again = parse_json(&text).unwrap();
        let expected = rearrangement(&parse_json(input).unwrap()).into_star();
        assert_eq!(again, expected);
    }
    let o = run(&["rearrange", COMB1], None);
    assert_eq!(stdout(&o).trim(), r#"{"type":"step","breakpoints":[0.0,5.0],"values":[1.0]}"#);
    let o = run(&["rearrange", TRIANGLE], None);
    assert_eq!(stdout(&o).trim(), r#"{"type":"linear","nodes":[0.0,2.0],"node_values":[1.0,0.0]}"#);
}

#[test]
fn rearrange_reads_samples() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "s.csv", "x,y\n0,1\n1,3\n2,2\n");
    let o = run(&["rearrange", &p], None);
    let star: Function = parse_json(&stdout(&o)).unwrap();
    assert_eq!(star.evaluate(0.5), 3.0);
    assert_eq!(star.evaluate(1.5), 2.0);
    assert_eq!(star.evaluate(2.5), 1.0);
}

fn bump_train() -> String {
    let mut nodes = Vec::new();
    let mut vals = Vec::new();
    for j in 0..10 {
        let a = 2.0 * j as f64;
        nodes.extend([a - 0.02, a, a + 1.0, a + 1.02]);
        vals.extend([0.0, 1.0, 1.0, 0.0]);
    }
    serde_json::json!({"type": "linear", "nodes": nodes, "node_values": vals}).to_string()
}

#[test]
fn bound_roots_on_bump_train_and_triangle() {
    let v = json(&run(&["bound-roots", &bump_train()], None));
    assert!(v["root_lower_bound"].as_u64().unwrap() >= 3);
    assert_eq!(v["nontrivial"], true);
    assert!(v["hypothesis"].as_str().unwrap().contains("f''(x) != 0"));

    let v = json(&run(&["bound-roots", TRIANGLE], None));
    assert!(v["best_q"].as_f64().unwrap() < 1.0);
    assert_eq!(v["root_lower_bound"], 0);
    assert!(v["statement"].as_str().unwrap().starts_with("no nontrivial certificate"));

    let o = run(&["bound-roots", BOX], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("piecewise-linear"));
}

#[test]
fn malformed_input_diagnostics() {
    let o = run(&["analyze", r#"{"type":"step","breakpoints":[0,1]}"#], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("values"));

    let o = run(&["analyze", r#"{"type":"step","breakpoints":[0,1],"values":[0]}"#], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero"));

    let o = run(&["analyze", "/nonexistent/input.json"], None);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["analyze", BOX, "--grid", "1:2:lin"], None);
    assert_eq!(o.status.code(), Some(1));
}
