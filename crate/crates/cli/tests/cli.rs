use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singulus")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_singulus"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn example1_is_obstructed() {
    let o = run(&["analyze-betti", &fixture("example1.json")]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["analysis"]["degree_sigma"], -8);
    let failed: Vec<&str> = v["analysis"]["obstructions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(failed.contains(&"regularity.I_3") && failed.contains(&"regularity.I_4"));
}

#[test]
fn koszul_document_is_smooth() {
    let table = run(&["smooth-table", "3", "3"]);
    assert_eq!(table.status.code(), Some(0));
    let o = run_stdin(&["analyze-betti", "-"], &String::from_utf8(table.stdout).unwrap());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["analysis"]["verdict"]["kind"], "smooth");
}

#[test]
fn malformed_documents_are_input_errors() {
    let o = run_stdin(&["analyze-betti", "-"], r#"{"n": 3, "columns": []}"#);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("d: missing field"), "{}", stderr(&o));
    let o = run_stdin(
        &["analyze-betti", "-"],
        r#"{"n": 3, "d": 3, "columns": [{"k": 1, "degrees": [1, 1, 2, -2]}]}"#,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("columns[0].degrees[3]"));
    let o = run(&["analyze-betti", "/nonexistent/table.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn text_format_lists_checks() {
    let o = run(&["analyze-betti", &fixture("example2.json"), "--format", "text"]);
    assert_eq!(o.status.code(), Some(2));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("sigma_interval=[-16, 368]"));
    assert!(text.contains("duplessis_wall"));
}

#[test]
fn inspect_product_plus_cube() {
    let o = run(&["inspect-poly", &fixture("product_plus_cube.poly")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["hilbert"]["tjurina"], 6);
    assert_eq!(v["deviations"].as_array().unwrap().len(), 0);
    assert_eq!(v["betti"]["table"]["columns"][0]["degrees"], serde_json::json!([1, 1, 2, 2, 2]));
    assert_eq!(v["betti"]["table"]["columns"][1]["degrees"], serde_json::json!([3, 3]));
}

#[test]
fn inspect_smooth_surface() {
    let o = run(&["inspect-poly", "--expr", "x0^3+x1^3+x2^3+x3^3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["hilbert"]["delta"], Value::Null);
    assert_eq!(v["analysis"]["verdict"]["kind"], "smooth");
}

#[test]
fn inspect_cone_fails_with_partial_report() {
    let o = run(&["inspect-poly", "--expr", "x0*x1*x2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cone"));
    let v = json(&o);
    assert_eq!(v["status"], "cone");
    assert_eq!(v["hilbert"]["delta"], 1);
}

#[test]
fn inspect_input_errors() {
    for args in [
        vec!["inspect-poly", "--expr", "x0^3 + x1"],
        vec!["inspect-poly", "--expr", "x0^"],
        vec!["inspect-poly", "--expr", "x0^2 + x1^2 + x2^2"],
        vec!["inspect-poly", "--expr", "x0^3 + x1^3", "--n", "1"],
        vec!["inspect-poly"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn inspect_truncated_bound() {
    let o = run(&["inspect-poly", "--expr", "x0^3+x1^3+x2^3+x3^3", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "incomplete");
}

#[test]
fn inspect_with_user_primes() {
    let o = run(&[
        "inspect-poly",
        "--expr",
        "x0*x1*x2 + x3^3",
        "--prime",
        "3",
        "--prime",
        "101",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["betti"]["primes"], serde_json::json!([3, 101]));
    assert!(!v["betti"]["escalations"].as_array().unwrap().is_empty());
    let o = run(&["inspect-poly", "--expr", "x0*x1*x2 + x3^3", "--prime", "100"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn non_reduced_input_warns() {
    // irreducible, with a cusp at (0:1:0)
    let o = run(&["inspect-poly", "--expr", "x0^2*x1 + x2^3"]);
    assert!(!stderr(&o).contains("warning"));
    assert_eq!(json(&o)["hilbert"]["tjurina"], 2);
    let o = run(&["inspect-poly", "--expr", "x0^2*x1", "--n", "3"]);
    assert!(stderr(&o).contains("warning"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn smooth_table_outputs() {
    let o = run(&["smooth-table", "2", "3"]);
    let v = json(&o);
    assert_eq!(v["columns"][0]["degrees"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["columns"][1]["degrees"], serde_json::json!([4]));
    let v = json(&run(&["smooth-table", "3", "3"]));
    assert_eq!(v["columns"][0]["degrees"], serde_json::json!([2, 2, 2, 2, 2, 2]));
    assert_eq!(v["columns"][1]["degrees"], serde_json::json!([4, 4, 4, 4]));
    assert_eq!(v["columns"][2]["degrees"], serde_json::json!([6]));
    assert_eq!(run(&["smooth-table", "1", "3"]).status.code(), Some(1));
    assert_eq!(run(&["smooth-table", "x", "3"]).status.code(), Some(1));
}

#[test]
fn hspog_outputs() {
    let yes = |n: &str, d: &str| json(&run(&["hspog", n, d, "--format", "json"]))["guaranteed"].as_bool().unwrap();
    assert!(yes("3", "4"));
    assert!(yes("4", "6"));
    assert!(!yes("4", "5"));
    let o = run(&["hspog", "4", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("5.78"), "{text}");
    assert!(text.contains("√5"));
    assert_eq!(run(&["hspog", "2", "5"]).status.code(), Some(1));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["analyze-betti"]).status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["analyze-betti", &fixture("example2.json")]);
    let b = run(&["analyze-betti", &fixture("example2.json")]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["inspect-poly", &fixture("nodal_cubic.poly"), "--threads", "1"]);
    let b = run(&["inspect-poly", &fixture("nodal_cubic.poly"), "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
