use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn derint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derint")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn bundled_c2_example_passes() {
    let o = derint(&["run", root().join("corpus/c2_weights.scn").to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("semistable locus            {z_1 ≠ 0}"));
    assert!(stdout(&o).contains("{z_1 ≠ 0} ∪ {w_2 ≠ 0}"));
}

#[test]
fn malformed_file_reports_position() {
    let path = fixture("malformed.scn");
    let o = derint(&["run", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("malformed.scn:6:5:"), "{}", stderr(&o));
}

#[test]
fn undeclared_variable_is_an_input_error() {
    let o = derint(&["run", fixture("undeclared_variable.scn").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("q^2"), "{}", stderr(&o));
}

#[test]
fn corrupted_expectation_is_a_mismatch() {
    let o = derint(&["run", fixture("corrupted_expect.scn").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("[FAIL] expected Tor rows"), "{out}");
    assert!(out.contains("H^-1: expected [0, 1, 1, 1, 2"), "{out}");
}

#[test]
fn machine_format_uses_strings_and_report_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = derint(&[
        "run",
        root().join("corpus/graph_dxy.scn").to_str().unwrap(),
        "--format",
        "machine",
        "--window",
        "3,6",
        "--report",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1, "the declared expectations need homological degree 6");
    assert!(stdout(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["facts"][1]["value"], "3,6");
    let tor = &v["tables"][0];
    assert_eq!(tor["rows"][0]["cells"][0], "1");
    assert_eq!(tor["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn truncation_override() {
    let o = derint(&["run", root().join("corpus/p1_weights.scn").to_str().unwrap(), "--truncate", "4", "--format", "machine"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let morse = v["tables"].as_array().unwrap().iter().find(|t| t["title"] == "Morse identity").unwrap();
    let residual = morse["rows"].as_array().unwrap().last().unwrap();
    assert_eq!(residual["cells"], serde_json::json!(["1", "0", "1", "0", "0"]));
}

#[test]
fn verify_bundled_corpus() {
    let o = derint(&["verify", root().join("corpus").to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed, 0 errors"));
}

#[test]
fn verify_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = derint(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let o = derint(&["verify", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_names_the_failing_file() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["c2_weights.scn", "circle_sign.scn"] {
        std::fs::copy(root().join("corpus").join(f), dir.path().join(f)).unwrap();
    }
    std::fs::copy(fixture("corrupted_expect.scn"), dir.path().join("b_corrupted.scn")).unwrap();
    let o = derint(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL  b_corrupted.scn  (expected Tor rows)"), "{}", stdout(&o));
    assert!(stdout(&o).contains("2 passed, 1 failed, 0 errors"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(code(&derint(&["run"])), 2);
    assert_eq!(code(&derint(&["run", "x.scn", "--window", "4"])), 2);
    assert_eq!(code(&derint(&["frobnicate"])), 2);
}
