use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbitframes"))
}

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn frame_bounds_report_has_fixed_header() {
    let out = run(&["frame-bounds", problem("frame_bounds.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["tool"], "orbitframes");
    assert_eq!(r["task"], "frame-bounds");
    assert_eq!(r["verdict"], true);
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    assert!(r["tolerances"]["frame_tol"].is_number());
    let a = r["result"]["report"]["lower_bound_A"].as_f64().unwrap();
    assert!((a - 4.0 / 3.0).abs() < 1e-12);
}

#[test]
fn malformed_json_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{\n  \"version\": \"1\",\n  \"task\": \n}");
    let out = run(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("ParseError at line 4"), "{err}");
}

#[test]
fn schema_errors_carry_a_json_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "schema.json",
        r#"{"version": "1", "task": "frame-bounds", "payload": {"T": [[[0.5, 0.0]]], "G": [[[1.0, "x"]]]}}"#,
    );
    let out = run(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("SchemaError at \"/payload/G/0/0"), "{err}");

    let unknown = write(
        dir.path(),
        "unknown.json",
        r#"{"version": "1", "task": "rank-one", "payload": {}, "options": {"grid": 3}}"#,
    );
    let err = String::from_utf8_lossy(&run(&["run", unknown.to_str().unwrap()]).stderr).into_owned();
    assert!(err.contains("SchemaError at \"/options/grid\""), "{err}");

    let version = write(
        dir.path(),
        "version.json",
        r#"{"version": "2", "task": "rank-one", "payload": {}}"#,
    );
    let err = String::from_utf8_lossy(&run(&["run", version.to_str().unwrap()]).stderr).into_owned();
    assert!(err.contains("/version"), "{err}");
}

#[test]
fn subcommand_must_match_task() {
    let out = run(&["rank-one", problem("frame_bounds.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_file_and_bad_flags_exit_one() {
    assert_eq!(run(&["run", "/nonexistent/problem.json"]).status.code(), Some(1));
    assert_eq!(run(&["frame-bounds"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn strict_turns_negative_verdicts_into_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "neg.json",
        r#"{"version": "1", "task": "frame-bounds", "payload": {
            "T": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]],
            "G": [[[1.0, 0.0]], [[0.0, 0.0]]]}}"#,
    );
    let p = path.to_str().unwrap();
    let lenient = run(&["frame-bounds", p]);
    assert_eq!(lenient.status.code(), Some(0));
    assert_eq!(report(&lenient)["verdict"], false);
    assert_eq!(run(&["frame-bounds", p, "--strict"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "frame-bounds",
            problem("frame_bounds.json").to_str().unwrap(),
            "--strict"
        ])
        .status
        .code(),
        Some(0)
    );
}

#[test]
fn dump_grid_writes_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let out = run(&[
        "corona-check",
        problem("corona_check.json").to_str().unwrap(),
        "--grid-radial",
        "4",
        "--grid-angular",
        "16",
        "--dump-grid",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,lambda_min"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len() as u64, r["result"]["grid_points"].as_u64().unwrap());
    let min = rows
        .iter()
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert_eq!(min, r["result"]["certificate"]["eta_sq"].as_f64().unwrap());
    assert_eq!(r["tolerances"]["grid_radial"], 4);

    let wrong = run(&[
        "run",
        problem("rank_one.json").to_str().unwrap(),
        "--dump-grid",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn no_matrices_drops_bulky_fields() {
    let p = problem("similarity.json");
    let full = report(&run(&["similarity", p.to_str().unwrap()]));
    assert!(full["result"]["W"].is_array());
    let slim = report(&run(&["similarity", p.to_str().unwrap(), "--no-matrices"]));
    assert!(slim["result"].get("W").is_none());
    assert!(slim["result"].get("V").is_none());
    assert!(slim["result"]["S_K"].is_array());
}

#[test]
fn output_flag_writes_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let p = problem("bilateral_number.json");
    let stdout = run(&["bilateral-number", p.to_str().unwrap()]).stdout;
    let summary = run(&[
        "bilateral-number",
        p.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(summary.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&summary.stdout).lines().count(), 3);
    assert_eq!(std::fs::read(&out_path).unwrap(), stdout);
}

#[test]
fn every_sample_problem_runs() {
    for name in [
        "frame_bounds.json",
        "corona_check.json",
        "model_space.json",
        "similarity.json",
        "frame_number.json",
        "bilateral_frame.json",
        "bilateral_number.json",
        "rank_one.json",
    ] {
        let out = run(&["run", problem(name).to_str().unwrap(), "--no-matrices"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let r = report(&out);
        assert_ne!(r["verdict"], false, "{name}");
    }
}
