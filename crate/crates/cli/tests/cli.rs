use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pencil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pencil"))
        .args(args)
        .env_remove("PENCIL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/pencil-report.v1.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(report: &Value) {
    let v = schema();
    let errors: Vec<String> = v
        .iter_errors(report)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn conic_pencil_report() {
    let o = pencil(&[
        "analyze", "--f", "X*Y", "--g", "X+Y", "--field", "q", "--mode", "dense", "--seed", "7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["rho"], 2);
    assert_eq!(r["seed"], 7);
    assert_eq!(r["field"]["kind"], "rationals");
    let points: Vec<&str> = r["spectral_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["point"].as_str().unwrap())
        .collect();
    assert_eq!(points, ["(0:1)", "(1:0)"]);
    assert_valid(&r);
}

#[test]
fn reports_validate_against_schema() {
    let cases: &[&[&str]] = &[
        &["analyze", "--f", "X^2*Y + X + 1", "--g", "Y^2 - 2", "--mode", "sparse"],
        &[
            "analyze",
            "--f",
            "X^2*Y + X + 1",
            "--g",
            "Y^2 - 2",
            "--mode",
            "sparse",
            "--polygon",
            "newton",
        ],
        &["analyze", "--f", "Y - X^2", "--g", "1"],
        &["analyze", "--f", "X^2 + Y^2 - 1", "--g", "X*Y", "--field", "fp:1009"],
        &[
            "analyze",
            "--f",
            "X^3 + Y^3 + 1",
            "--g",
            "X*Y",
            "--field",
            "fp:31",
            "--mode",
            "sparse",
        ],
        &["analyze", "--f", "X^2*Y - 2", "--g", "X + Y^3", "--quiet"],
    ];
    for args in cases {
        let o = pencil(args);
        assert!(matches!(o.status.code(), Some(0 | 2)), "{args:?}: {}", stderr(&o));
        assert_valid(&json(&o));
    }
}

#[test]
fn seed_from_environment() {
    let args = ["analyze", "--f", "X*Y", "--g", "X+Y", "--quiet"];
    let a = Command::new(env!("CARGO_BIN_EXE_pencil"))
        .args(args)
        .env("PENCIL_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&a)["seed"], 11);
    let b = Command::new(env!("CARGO_BIN_EXE_pencil"))
        .args(args)
        .args(["--seed", "12"])
        .env("PENCIL_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&b)["seed"], 12);
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let args = [
        "analyze",
        "--f",
        "X^2*Y + X + 1",
        "--g",
        "Y^2 - 2",
        "--mode",
        "sparse",
        "--seed",
        "3",
    ];
    let a = pencil(&args);
    let b = pencil(&args);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_file_and_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = pencil(&[
        "analyze",
        "--f",
        "X*Y",
        "--g",
        "X+Y",
        "--report",
        path.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(o.stderr.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["rho"], 2);
}

#[test]
fn irreducible_curve() {
    let o = pencil(&["irreducible", "--f", "Y^2 - X^3 - X", "--field", "q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("irreducible: true"));
    let o = pencil(&["irreducible", "--f", "(X + Y)*(X - Y + 1)*(X*Y - 3)", "--field", "q"]);
    assert!(stdout(&o).contains("irreducible: false"));
    assert!(stdout(&o).contains("kernel_dim: 2"));
}

#[test]
fn brute_force_double_line() {
    let o = pencil(&["spectrum-bf", "--f", "Y - X^2", "--g", "1", "--prime", "101"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json(&o);
    let points = r["spectral_points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    assert_eq!(points[0]["point"], "(0:1)");
    assert_eq!(points[0]["kernel_dim"], 2);
}

#[test]
fn newton_rendering() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("n.svg");
    let f = "1 + 2*X*Y + 3*X^2*Y^2 + 5*X^3*Y^2 + 7*X^2*Y^3";
    let o = pencil(&[
        "newton",
        "--f",
        f,
        "--polygon",
        "superior",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("N = 15, N_X = 4, N_Y = 4, N_E = 3"), "{text}");
    assert!(text.contains("2N - N_X - N_Y - N_E = 19"));
    assert!(text.starts_with(". . *\n"));
    let svg = std::fs::read_to_string(svg).unwrap();
    assert!(svg.starts_with("<svg"));
    let o = pencil(&["newton", "--f", f]);
    assert!(stdout(&o).contains("N = 5, N_X = 1, N_Y = 1, N_E = 2"));
}

#[test]
fn bertini_product() {
    let o = pencil(&["bertini", "--vars", "3", "--poly", "X1*X2*X3", "--seed", "4", "--quiet"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["kernel_dims"][0], 2);
    assert_eq!(r["bound"], 90);
    let o = pencil(&[
        "bertini",
        "--vars",
        "3",
        "--poly",
        "X1^2 + X2^2 + X3^2",
        "--g",
        "X1*X2 + X3",
        "--quiet",
    ]);
    assert_eq!(json(&o)["kernel_dims"], serde_json::json!([0, 0]));
}

#[test]
fn worked_examples_bundle() {
    let o = pencil(&["paper-examples"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["dense"].as_array().unwrap().len(), 5);
    assert_eq!(r["five_term"]["superior"]["dimension"], 19);
    assert_eq!(r["rectangle"][1]["m"], 6);
    assert!(stderr(&o).contains("N_Y"));
}

#[test]
fn input_errors_exit_with_one() {
    let cases: &[(&[&str], &str)] = &[
        (&["analyze", "--f", "2X", "--g", "1"], "polynomials"),
        (&["analyze", "--f", "X", "--g", "1"], "spectrum"),
        (&["analyze", "--f", "X^2", "--g", "X^2"], "spectrum"),
        (&["analyze", "--f", "X*Y", "--g", "1", "--field", "fp:10"], "not prime"),
        (
            &["analyze", "--f", "X^2*Y + 1", "--g", "X + Y^3", "--field", "fp:5"],
            "must exceed 6",
        ),
        (&["bertini", "--vars", "2", "--poly", "X1*X2"], "spectrum"),
        (&["analyze", "--f", "X*Y"], "--g"),
        (&["frobnicate"], "frobnicate"),
    ];
    for (args, needle) in cases {
        let o = pencil(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = stderr(&o);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}
