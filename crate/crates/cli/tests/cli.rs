use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_schur-hadamard");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_poly(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn example1(dir: &Path) -> (PathBuf, PathBuf) {
    (
        write_poly(
            dir,
            "f.json",
            r#"{"degree": 5, "coeffs": [[0.7, 0], [0.2, 0], [0.9, 0], [0, 0], [0, 0]]}"#,
        ),
        write_poly(
            dir,
            "g.json",
            r#"{"degree": 5, "coeffs": [[3, 0], [2, 0], [2.5, 0], [0, 0], [0, 0]]}"#,
        ),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_verdict_and_bound() {
    let dir = TempDir::new().unwrap();
    let (f, _) = example1(dir.path());
    let v = json_of(&run(&["analyze", "--poly", s(&f)]));
    assert_eq!(v["stable"], false);
    assert_eq!(v["roots"].as_array().unwrap().len(), 5);

    let h = write_poly(dir.path(), "h.json", r#"{"degree": 2, "coeffs": [[0.5, 0], [0.3, 0]]}"#);
    let v = json_of(&run(&["analyze", "--poly", s(&h), "--witness"]));
    assert_eq!(v["stable"], true);
    assert_eq!(v["criteria"][0]["criterion"], "fujiwara");
    assert_eq!(v["criteria"][0]["satisfied"], true);
    assert!(v["criteria"][0]["witness"].is_object());
    assert!(v["fujiwara_bound"].as_f64().unwrap() >= v["max_modulus"].as_f64().unwrap());
}

#[test]
fn fractional_input_is_reduced() {
    let dir = TempDir::new().unwrap();
    let p = write_poly(
        dir.path(),
        "frac.json",
        r#"{"terms": [{"pow": [2, 1]}, {"pow": [1, 2], "coeff": [0.3, 0]}, {"pow": [0, 1], "coeff": [0.5, 0]}]}"#,
    );
    let v = json_of(&run(&["analyze", "--poly", s(&p)]));
    assert_eq!(v["commensurate_base"], "1/2");
    assert_eq!(v["polynomial"]["degree"], 4);
}

#[test]
fn power_branches() {
    let dir = TempDir::new().unwrap();
    let p = write_poly(dir.path(), "p.json", r#"{"degree": 2, "coeffs": [[0, 0], [0, 0.01]]}"#);
    let v = json_of(&run(&["power", "--poly", s(&p), "--p", "1/2", "--all-branches"]));
    assert_eq!(v["branch_count"], 2);
    assert_eq!(v["members"].as_array().unwrap().len(), 2);
    assert_eq!(v["stable"], true);

    let q = write_poly(dir.path(), "q.json", r#"{"degree": 2, "coeffs": [[0, 0], [0, 4]]}"#);
    let v = json_of(&run(&["power", "--poly", s(&q), "--p", "1/2", "--all-branches"]));
    assert_eq!(v["stable"], false);

    let v = json_of(&run(&["power", "--poly", s(&q), "--p", "-2"]));
    assert_eq!(v["members"].as_array().unwrap().len(), 1);
}

#[test]
fn product_and_criteria() {
    let dir = TempDir::new().unwrap();
    let f = write_poly(dir.path(), "f.json", r#"{"degree": 2, "coeffs": [[0.2, 0], [0.3, 0]]}"#);
    let g = write_poly(dir.path(), "g.json", r#"{"degree": 2, "coeffs": [[-1, 0], [0.9, 0]]}"#);
    let v = json_of(&run(&["product", "--f", s(&f), "--g", s(&g), "--criterion", "a"]));
    assert_eq!(v["criterion"]["satisfied"], true);
    assert_eq!(v["stable"], true);
    let v = json_of(&run(&["product", "--f", s(&f), "--g", s(&g), "--szego"]));
    assert_eq!(v["product"], "szego");

    let h = write_poly(
        dir.path(),
        "h.json",
        r#"{"degree": 3, "coeffs": [[0.2, 0], [0.3, 0], [0, 0]]}"#,
    );
    assert_eq!(run(&["product", "--f", s(&f), "--g", s(&h)]).status.code(), Some(2));
}

#[test]
fn threshold_methods_agree_on_example1() {
    let dir = TempDir::new().unwrap();
    let (f, g) = example1(dir.path());
    let grid = json_of(&run(&["threshold", "--poly", s(&f), "--mode", "max"]));
    assert_eq!(grid["kind"], "sufficient_max");
    assert_eq!(grid["grid_n"], 1000);
    let exact = json_of(&run(&[
        "threshold",
        "--poly",
        s(&f),
        "--mode",
        "max",
        "--method",
        "exact",
    ]));
    let onset = json_of(&run(&[
        "threshold",
        "--poly",
        s(&f),
        "--mode",
        "max",
        "--method",
        "onset",
    ]));
    let guardian = json_of(&run(&[
        "threshold",
        "--poly",
        s(&f),
        "--mode",
        "max",
        "--method",
        "guardian",
    ]));
    let (gv, ev, ov, mv) = (
        grid["value"].as_f64().unwrap(),
        exact["value"].as_f64().unwrap(),
        onset["value"].as_f64().unwrap(),
        guardian["value"].as_f64().unwrap(),
    );
    assert!(ov < ev && ev <= gv);
    assert!((ov - mv).abs() < 1e-5);
    let beta = json_of(&run(&[
        "threshold",
        "--poly",
        s(&g),
        "--mode",
        "max",
        "--method",
        "beta",
    ]));
    assert_eq!(beta["kind"], "instability_max");
    let nested = json_of(&run(&[
        "threshold",
        "--poly",
        s(&f),
        "--mode",
        "max",
        "--grid-scheme",
        "nested",
    ]));
    assert!((nested["value"].as_f64().unwrap() - 3.40372).abs() < 1e-5);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let (f, _) = example1(dir.path());
    let bad = write_poly(dir.path(), "bad.json", "{\"degree\": 2,");
    assert_eq!(run(&["analyze", "--poly", s(&bad)]).status.code(), Some(2));
    assert_eq!(
        run(&["analyze", "--poly", "/nonexistent/poly.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["power", "--poly", s(&f), "--p", "1/0"]).status.code(), Some(2));
    assert_eq!(
        run(&["threshold", "--poly", s(&f), "--mode", "min", "--method", "exact"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["threshold", "--poly", s(&f), "--mode", "max", "--grid-n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "threshold",
            "--poly",
            s(&f),
            "--mode",
            "max",
            "--method",
            "onset",
            "--tol",
            "1e-12"
        ])
        .status
        .code(),
        Some(3)
    );
    let big = write_poly(
        dir.path(),
        "big.json",
        &format!(r#"{{"degree": 13, "coeffs": [{}]}}"#, vec!["[0.1, 0]"; 13].join(",")),
    );
    assert_eq!(
        run(&["threshold", "--poly", s(&big), "--mode", "max", "--method", "guardian"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_outputs() {
    let dir = TempDir::new().unwrap();
    let (f, _) = example1(dir.path());
    let out = dir.path().join("empty");
    json_of(&run(&[
        "sweep",
        "--poly",
        s(&f),
        "--from",
        "2",
        "--to",
        "1",
        "--step",
        "0.5",
        "--out",
        s(&out),
    ]));
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
    assert!(csv.starts_with("p,stable,max_modulus,root_re_1,root_im_1"));
    assert!(!out.join("sweep.svg").exists());

    let out = dir.path().join("full");
    let v = json_of(&run(&[
        "sweep",
        "--poly",
        s(&f),
        "--from",
        "1",
        "--to",
        "5",
        "--step",
        "0.25",
        "--out",
        s(&out),
    ]));
    assert_eq!(v["records"], 17);
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 18);
    let svg = fs::read_to_string(out.join("sweep.svg")).unwrap();
    assert_eq!(svg.matches("class=\"root\"").count(), 17 * 5);
    assert_eq!(svg.matches("class=\"unit-circle\"").count(), 1);
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn reproduce_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for example in ["1", "2"] {
        let a = dir.path().join(format!("a{example}"));
        let b = dir.path().join(format!("b{example}"));
        json_of(&run(&["reproduce", "--example", example, "--out", s(&a)]));
        json_of(&run(&["reproduce", "--example", example, "--out", s(&b)]));
        for name in [
            "report.json",
            "comparison.csv",
            "sweep_f.csv",
            "sweep_g.csv",
            "sweep_f.svg",
            "sweep_g.svg",
        ] {
            assert_eq!(
                fs::read(a.join(name)).unwrap(),
                fs::read(b.join(name)).unwrap(),
                "{name}"
            );
        }
    }
    let table = fs::read_to_string(dir.path().join("a1").join("comparison.csv")).unwrap();
    assert!(table.starts_with("quantity,reference,computed,abs_deviation,method\n"));
    assert!(table.contains("onset_max,3.35457,"));
    assert_eq!(run(&["reproduce", "--example", "3"]).status.code(), Some(2));
}
