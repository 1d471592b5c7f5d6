use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

#[test]
fn envelope_fields_in_order() {
    let (code, v) = json(&["pair", "--tx", "1/2", "--ty", "2/3", "--phi", "sqrt(2/3)"]);
    assert_eq!(code, 0);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "version", "inputs", "result", "elapsed_ms"]);
    assert_eq!(v["command"], "pair");
    assert_eq!(v["result"]["trace_exact"], "1/2 - sqrt(2)");
    assert_eq!(v["result"]["trace_symmetry"], true);
    assert_eq!(v["result"]["axes_independent"], true);
}

#[test]
fn json_round_trips() {
    let out = run(&["--json", "verdict", "--tx", "1/2", "--ty", "2/3", "--phi", "sqrt(2/3)"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn verdict_examples() {
    let (code, v) = json(&["verdict", "--tx", "1/2", "--ty", "2/3", "--phi", "sqrt(2/3)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"]["kind"], "InfiniteCertified");
    assert_eq!(v["result"]["f_zeta"]["coefficients"], serde_json::json!(["1", "1", "1/4", "1", "1"]));

    let (code, v) = json(&["verdict", "--tx", "1", "--ty", "2/5", "--phi", "phi25_2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"]["kind"], "FiniteCandidate");
    assert_eq!(v["result"]["verdict"]["order"], 5);

    // cos(π/8) is outside the field: the verdict falls back to Inconclusive.
    let (code, v) = json(&["verdict", "--tx", "1/8", "--ty", "1/2", "--phi", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"]["kind"], "Inconclusive");
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(run(&["verdict", "--tx", "abc", "--ty", "1/2", "--phi", "0"]).status.code(), Some(2));
    assert_eq!(run(&["pair", "--tx", "3/2", "--ty", "1/2", "--phi", "0"]).status.code(), Some(2));
    assert_eq!(run(&["pair", "--tx", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let out = run(&["transport", "--tx", "1/2", "--ty", "1/2", "--phi", "0", "--curve", "z+1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_3() {
    // cos(π/8) is not in the field.
    let out = run(&["pair", "--tx", "1/8", "--ty", "1/2", "--phi", "0"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    // |a| > 2: no unit-circle roots.
    assert_eq!(run(&["minpoly", "--trace", "5"]).status.code(), Some(3));
    // infinite group: no finite orbit
    let out = run(&["orbit", "--tx", "1/2", "--ty", "2/3", "--phi", "sqrt(2/3)", "--cap", "500"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn numeric_pair() {
    let (code, v) = json(&["pair", "--numeric", "--tx", "0.7", "--ty", "2.1", "--phi", "1/3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["mode"], "Numeric");
    assert!(v["result"]["trace_exact"].is_null());
}

#[test]
fn minpoly_prime_pipeline() {
    let (code, v) = json(&["minpoly", "--prime", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["f_zeta"]["text"], "x^2 + 3/2*x + 1");
    assert_eq!(v["result"]["root"]["root_of_unity"], false);
    assert_eq!(run(&["minpoly", "--prime", "9"]).status.code(), Some(2));
}

#[test]
fn orbit_with_two_points() {
    let (code, v) = json(&["orbit", "--tx", "1/2", "--ty", "1", "--phi", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["orbit_size"], 2);
    assert_eq!(v["result"]["group"], "D4");
}

#[test]
fn density_needs_seed_and_is_deterministic() {
    let args = ["density", "--tx", "1/2", "--ty", "2/3", "--phi", "sqrt(2/3)", "--count", "20000", "--res", "10"];
    assert_eq!(run(&args).status.code(), Some(2));
    let mut seeded = vec!["--seed", "7"];
    seeded.extend_from_slice(&args);
    let (c1, a) = json(&seeded);
    let (c2, b) = json(&seeded);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a["result"], b["result"]);
    assert!(a["result"]["coverage"]["fraction"].as_f64().unwrap() > 0.5);
    assert_eq!(a["result"]["coverage"]["seed"], 7);
}

#[test]
fn density_csv_export() {
    let dir = std::env::temp_dir().join(format!("twistor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("points.csv");
    let out = run(&[
        "density", "--method", "wk", "--k", "1", "--samples", "10", "--tx", "1/2", "--ty", "2/3", "--phi",
        "sqrt(2/3)", "--csv", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("x,y,z\n"));
    assert!(text.lines().count() > 10);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn transport_matches_word() {
    let (code, v) = json(&[
        "transport", "--tx", "1/2", "--ty", "2/3", "--phi", "sqrt(2/3)", "--curve", "x+1,y+1,x-1,y-1", "--bx",
        "0,1,0,0",
    ]);
    assert_eq!(code, 0);
    assert!(v["result"]["max_abs_diff"].as_f64().unwrap() < 1e-9);
    let out = run(&["transport", "--tx", "1/2", "--ty", "1/2", "--phi", "0", "--bx", "1,1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_single_entry() {
    let (code, v) = json(&["catalog", "--id", "A4-a-1", "--halved"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["catalog"]["failures"], 0);
    assert_eq!(v["result"]["halved"]["mismatches"], 0);
    assert_eq!(run(&["catalog", "--id", "nope"]).status.code(), Some(2));
}

#[test]
fn tables_pass_and_detect_corruption() {
    let (code, v) = json(&["tables"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["result"]["tables"]["diffs"], 0);

    let golden = include_str!("../../core/data/case_tables.tsv");
    let bad = golden.replace("1 5/2 13/4 5/2 1", "1 5/2 13/4 5/2 2");
    let dir = std::env::temp_dir().join(format!("twistor-tables-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.tsv");
    std::fs::write(&path, bad).unwrap();
    assert_eq!(run(&["tables", "--golden", path.to_str().unwrap()]).status.code(), Some(4));
    std::fs::write(&path, "not a table\n").unwrap();
    assert_eq!(run(&["tables", "--golden", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn text_output_is_flat() {
    let out = run(&["verdict", "--tx", "1", "--ty", "1/3", "--phi", "sqrt(1/3)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result.trace: -2/3\n"));
    assert!(text.contains("result.verdict.kind: InfiniteCertified\n"));
}
