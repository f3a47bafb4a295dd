use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use wreg_core::document::SheafDocument;

fn wreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreg"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn examples() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn koszul_output_is_exact() {
    let o = wreg(&["koszul", "--weights", "5,3,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[[-5,-3,-2],[-8,-7,-5],[-10]]\n");
}

#[test]
fn check_wreg_reports_missing_sections() {
    let o = wreg(&["check-wreg", "examples/p32_om5.json", "-m", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["h0"]["twist"], 6);
    assert_eq!(v["h0"]["value"], 0);
}

#[test]
fn shipped_examples_round_trip() {
    let files = examples();
    assert_eq!(files.len(), 5);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let doc = SheafDocument::parse(&text).unwrap();
        let again = SheafDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(doc, again, "{}", f.display());
        let e = doc.to_expr(&Default::default()).unwrap();
        assert_eq!(SheafDocument::from_expr(&e), doc, "{}", f.display());
    }
}

#[test]
fn csv_and_json_tables_agree() {
    let file = "examples/p3221_sharp_monad.json";
    let json = wreg(&["cohom", file, "--twists", "-7..3"]);
    let csv = wreg(&["cohom", file, "--twists", "-7..3", "--format", "csv"]);
    assert_eq!(json.status.code(), Some(0));
    assert_eq!(csv.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    let from_json: Vec<String> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let mut cells = vec![r["twist"].to_string()];
            cells.extend(r["h"].as_array().unwrap().iter().map(Value::to_string));
            cells.push(r["consistent"].to_string());
            cells.join(",")
        })
        .collect();
    let text = stdout(&csv);
    let from_csv: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(from_json, from_csv);
}

#[test]
fn outputs_are_byte_identical() {
    for args in [
        &["cohom", "examples/p3221_sharp_monad.json", "--twists", "-8..4", "--seed", "7"][..],
        &["verify-paper", "--format", "json"],
        &["wreg", "examples/p321_om5.json"],
    ] {
        let a = wreg(args);
        let b = wreg(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn malformed_polynomial_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"weights":[1,1],"sheaf":{"type":"monad","A":[],"B":[0],"C":[1],"alpha":[[]],"beta":[["x0^"]]}}"#,
    )
    .unwrap();
    let o = wreg(&["cohom", path.to_str().unwrap(), "--twists", "0..1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("x0^") && err.contains("position"), "{err}");
}

#[test]
fn unknown_keys_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"weights":[3,2],"sheaf":{"type":"split","twists":[0],"rank":1}}"#).unwrap();
    let o = wreg(&["wreg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

/// Squares of the coordinates on `P^3`: the cokernel of `beta` only vanishes from twist 3,
/// well past the first degree scanned.
const SQUARES: &str = r#"{"weights":[1,1,1,1],"sheaf":{"type":"monad","A":[-2],"B":[0,0,0,0],"C":[2],
  "alpha":[["x1^2"],["-x0^2"],["x3^2"],["-x2^2"]],"beta":[["x0^2","x1^2","x2^2","x3^2"]]}}"#;

#[test]
fn window_cap_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("squares.json");
    std::fs::write(&path, SQUARES).unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(wreg(&["h1-gens", path]).status.code(), Some(0));
    let o = wreg(&["h1-gens", path, "--window-cap", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn strict_mode_rejects_unverified_monads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("squares.json");
    std::fs::write(&path, SQUARES).unwrap();
    let path = path.to_str().unwrap();
    let lax = wreg(&["cohom", path, "--twists", "0..0", "--window-cap", "1"]);
    let strict = wreg(&["cohom", path, "--twists", "0..0", "--window-cap", "1", "--strict"]);
    assert_eq!(strict.status.code(), Some(4), "{}", String::from_utf8_lossy(&strict.stderr));
    assert!(strict.stdout.is_empty());
    assert!(String::from_utf8_lossy(&lax.stderr).contains("unverified"));
}

#[test]
fn verify_paper_json_has_no_mismatches() {
    let o = wreg(&["verify-paper", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 20);
    assert!(checks.iter().all(|c| c["agreement"] != "mismatch"));
}
