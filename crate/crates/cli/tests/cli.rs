use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn nilcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcone"))
        .args(args)
        .env("NILCONE_FIXTURES", fixtures())
        .output()
        .expect("run nilcone")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write_json(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.display().to_string()
}

#[test]
fn classify_elliptic() {
    let out = nilcone(&["classify", "--input", "lmhs_elliptic.json"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["m"], json!([0, 1]));
    assert_eq!(r["result"]["s"], json!({"1": [1, 0]}));
    assert_eq!(r["result"]["split"], json!(false));
    assert_eq!(r["command"], "classify");
    assert_eq!(r["config"]["seed"], 0);
}

#[test]
fn classify_zero_reads_signature_of_q() {
    let dir = tempfile::tempdir().unwrap();
    let input = json!({
        "space": {"k": 0, "Q": [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]]},
        "N": [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]],
    });
    let path = write_json(dir.path(), "zero.json", &input);
    let out = nilcone(&["classify", "--input", &path]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["m"][0], 3);
    assert_eq!(r["result"]["s"]["0"], json!([2, 1]));
}

#[test]
fn parse_and_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"space\": ").unwrap();
    assert_eq!(code(&nilcone(&["classify", "--input", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&nilcone(&["classify", "--input", "no_such_file.json"])), 2);
    assert_eq!(code(&nilcone(&["classify"])), 2);
    assert_eq!(code(&nilcone(&["frobnicate"])), 2);

    let semisimple = json!({"space": {"k": 1, "Q": [["0", "1"], ["-1", "0"]]}, "N": [["1", "0"], ["0", "-1"]]});
    let path = write_json(dir.path(), "ss.json", &semisimple);
    let out = nilcone(&["classify", "--input", &path]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("nilpotent"));

    let outside = json!({"space": {"k": 0, "Q": [["1", "0"], ["0", "1"]]}, "N": [["0", "1"], ["0", "0"]]});
    let path = write_json(dir.path(), "outside.json", &outside);
    assert_eq!(code(&nilcone(&["classify", "--input", &path])), 3);

    let degenerate = json!({"space": {"k": 0, "Q": [["1", "0"], ["0", "0"]]}, "N": [["0", "0"], ["0", "0"]]});
    let path = write_json(dir.path(), "degenerate.json", &degenerate);
    assert_eq!(code(&nilcone(&["classify", "--input", &path])), 3);

    assert_eq!(code(&nilcone(&["verify-lmhs", "--input", "representative_elliptic.json"])), 2);
}

#[test]
fn weight_filtration_of_elliptic() {
    let out = nilcone(&["weight-filtration", "--input", "lmhs_elliptic.json"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["dims"], json!([1, 1, 2]));
    assert_eq!(r["result"]["center"], 1);
}

#[test]
fn deligne_of_elliptic_and_pure() {
    let r = report(&nilcone(&["deligne", "--input", "lmhs_elliptic.json"]));
    assert_eq!(r["verdict"], true);
    let pieces: Vec<(i64, i64)> = r["result"]["pieces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["p"].as_i64().unwrap(), p["q"].as_i64().unwrap()))
        .collect();
    assert_eq!(pieces, vec![(0, 0), (1, 1)]);

    // N = 0: the splitting is the Hodge decomposition.
    let r = report(&nilcone(&["deligne", "--input", "lmhs_pure_weight_one.json"]));
    assert_eq!(r["verdict"], true);
    let pieces: Vec<(i64, i64, u64)> = r["result"]["pieces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["p"].as_i64().unwrap(), p["q"].as_i64().unwrap(), p["dim"].as_u64().unwrap()))
        .collect();
    assert_eq!(pieces, vec![(0, 1, 1), (1, 0, 1)]);
}

#[test]
fn verify_lmhs_verdicts() {
    let out = nilcone(&["verify-lmhs", "--input", "lmhs_elliptic.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["verdict"], true);

    let out = nilcone(&["verify-lmhs", "--input", "lmhs_elliptic_flipped.json"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], false);
    assert_eq!(r["result"]["failed_axioms"], json!(["positivity"]));
    let positivity = r["result"]["axioms"].as_array().unwrap().iter().find(|a| a["axiom"] == "positivity").unwrap();
    assert!(!positivity["witness"].as_array().unwrap().is_empty());
}

#[test]
fn verify_cone_verdicts() {
    let out = nilcone(&["verify-cone", "--input", "cone_b_space_3.json", "--grid-depth", "3", "--samples", "20"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["verdict"], true);
    assert_eq!(r["config"]["grid_depth"], 3);
    assert_eq!(r["config"]["samples"], 20);
    assert_eq!(r["result"]["orbit"]["common_invariants"]["m"][0], 0);

    let out = nilcone(&["verify-cone", "--input", "cone_elliptic_opposite.json"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], false);
    assert!(!r["result"]["orbit"]["witness"].is_null() || !r["result"]["validation"]["ok"].as_bool().unwrap());
}

#[test]
fn representative_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rep.json");
    let run = nilcone(&["representative", "--k", "1", "--m", "0,1", "--s", "1:1,0", "--output", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert_eq!(fs::read(&out).unwrap(), fs::read(fixtures().join("representative_elliptic.json")).unwrap());

    // The representative classifies back to its own invariants.
    let r = report(&nilcone(&["classify", "--input", out.to_str().unwrap()]));
    assert_eq!(r["result"]["m"], json!([0, 1]));

    assert_eq!(code(&nilcone(&["representative", "--k", "1", "--m", "0,1", "--s", "1:1"])), 2);
    assert_eq!(code(&nilcone(&["representative", "--k", "1", "--m", "0,1", "--s", "1:2,0"])), 3);
}

#[test]
fn catalog_in_dimension_two() {
    let r = report(&nilcone(&["catalog", "--dim-max", "2"]));
    let odd: Vec<(Value, Value)> = r["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["dim"] == 2 && e["k"].as_u64().unwrap() % 2 == 1)
        .map(|e| (e["m"].clone(), e["s"].clone()))
        .collect();
    assert_eq!(
        odd,
        vec![
            (json!([0, 1]), json!({"1": [1, 0]})),
            (json!([0, 1]), json!({"1": [0, 1]})),
            (json!([2, 0]), json!({"1": [0, 0]})),
        ]
    );
    assert_eq!(r["count"], r["entries"].as_array().unwrap().len());
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input: Value = serde_json::from_str(&fs::read_to_string(fixtures().join("cone_elliptic_elliptic.json")).unwrap()).unwrap();
    let path = write_json(dir.path(), "cone.json", &input);
    let args = ["verify-cone", "--input", path.as_str(), "--seed", "7", "--samples", "15", "--grid-depth", "2"];
    let first = nilcone(&args);
    let second = nilcone(&args);
    assert_eq!(first.stdout, second.stdout);
    let r1 = report(&first);
    assert_eq!(r1["config"]["seed"], 7);

    // Replace the input with the report's echo: the report is unchanged.
    write_json(dir.path(), "cone.json", &r1["input"]);
    assert_eq!(report(&nilcone(&args)), r1);

    // A report is itself accepted as input.
    let rpath = write_json(dir.path(), "report.json", &r1);
    let again = report(&nilcone(&["verify-cone", "--input", &rpath, "--seed", "7", "--samples", "15", "--grid-depth", "2"]));
    assert_eq!(again["result"], r1["result"]);
}

#[test]
fn text_format_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let run = nilcone(&["classify", "--input", "lmhs_elliptic.json", "--format", "text", "--output", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert!(run.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.contains(&"command = classify"));
    assert!(lines.contains(&"result.m.1 = 1"));
    assert!(lines.contains(&"result.split = false"));
    assert!(lines.contains(&"config.format = text"));
    assert!(lines.iter().all(|l| l.contains(" = ")));
}

#[test]
fn shipped_fixtures_match_export() {
    let dir = tempfile::tempdir().unwrap();
    let run = nilcone(&["fixtures", "--output", dir.path().to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let mut count = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let entry = entry.unwrap();
        let shipped = fixtures().join(entry.file_name());
        assert_eq!(fs::read(entry.path()).unwrap(), fs::read(&shipped).unwrap(), "{:?}", entry.file_name());
        count += 1;
    }
    assert!(count >= 20);
}
