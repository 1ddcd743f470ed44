use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymodels")).args(args).output().expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).expect("valid schema")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let mut all: Vec<&str> = args.to_vec();
    let o = out.to_str().unwrap().to_string();
    all.extend(["--json", &o, "--deterministic"]);
    let res = run(&all);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    (res.status.code().unwrap(), v)
}

#[test]
fn verify_cyclic_three() {
    let (code, v) = json_of(&["verify", "--model", "omega1", "--n", "3"]);
    assert_eq!(code, 0);
    let checks = v["report"]["checks"].as_array().unwrap();
    let boundary = checks.iter().find(|c| c["name"] == "verify_boundary").unwrap();
    let mult = &boundary["witness"]["factors"][0]["multipliers"];
    assert_eq!(mult, &serde_json::json!(["-6 * th1", "-18 * th2"]));
}

#[test]
fn molien_cornulier() {
    let (code, v) = json_of(&["molien", "--group", "cornulier", "--p", "3", "--terms", "13", "--degree", "5"]);
    assert_eq!(code, 0);
    let c: Vec<u64> = v["coefficients"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    // (1+t³+2t⁵+2t⁶+t⁸+t¹¹)/((1−t²)(1−t⁴)(1−t⁶)(1−t³)) expanded by hand through t¹²
    assert_eq!(c, vec![1, 0, 1, 2, 2, 4, 7, 6, 11, 14, 16, 22, 29]);
}

#[test]
fn verify_all_table() {
    let (code, v) = json_of(&["verify-all", "--n", "2", "--jobs", "2"]);
    assert_eq!(code, 0);
    let rows = v["summary"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r["status"] != "FAIL"));
    let r14 = rows.iter().find(|r| r["model"] == "Omega14").unwrap();
    assert_eq!(r14["status"], "PASS*");
}

#[test]
fn deterministic_json_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let s = run(&["verify", "--model", "omega14", "--json", p.to_str().unwrap(), "--deterministic"]);
        assert_eq!(s.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn render_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut svgs = Vec::new();
    for k in 0..2 {
        let stem = dir.path().join(format!("o{k}"));
        let (code, v) =
            json_of(&["render", "--model", "omega1", "--n", "3", "--grid", "128", "--out", stem.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(v["max_residual"].as_f64().unwrap() < 1e-3);
        svgs.push(std::fs::read(stem.with_extension("svg")).unwrap());
        let csv = std::fs::read_to_string(stem.with_extension("csv")).unwrap();
        assert!(csv.starts_with("x,y,factor_index\n"));
    }
    assert_eq!(svgs[0], svgs[1]);
}

#[test]
fn spectrum_covers_cornulier() {
    let (code, v) = json_of(&["spectrum", "--model", "omega1", "--n", "2", "--degree", "6"]);
    assert_eq!(code, 0);
    assert!(v["block_triangular"].as_bool().unwrap());
    let (code, v) = json_of(&["covers", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["covers"].as_array().unwrap().len(), 4);
    let (code, v) = json_of(&["cornulier", "--p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["primaries_closed"], false);
    assert_eq!(v["report"]["with_eta3_closed"], true);
}

#[test]
fn model_and_numerics() {
    let (code, v) = json_of(&["model", "--model", "omega22"]);
    assert_eq!(code, 0);
    assert_eq!(v["model"]["invariants"].as_array().unwrap().len(), 3);
    let (code, v) = json_of(&["verify", "--model", "omega3", "--n", "2", "--samples", "5000", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["numerics"]["ellipticity"]["passed"], true);
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(run(&["verify", "--model", "omega1", "--n", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--model", "omega7"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--model", "omega10"]).status.code(), Some(2));
    assert_eq!(run(&["molien", "--group", "C7"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let bad = run(&["cornulier", "--json", "/nonexistent-dir/x/r.json"]);
    assert_eq!(bad.status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
