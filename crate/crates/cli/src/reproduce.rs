//! Recomputes the two worked examples and writes a report directory.
//!
//! Every file written here is a pure function of the example number, so
//! repeated runs produce byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use schur_hadamard::threshold::DEFAULT_TOLERANCE;
use schur_hadamard::{
    locate_onset, pstar_exact, pstar_grid_with, Direction, GridScheme, Mode, MonicPolynomial, StabilityStatus,
    SweepRecord, ThresholdResult,
};
use serde_json::{json, Value};

use crate::commands::{write_file, write_sweep};
use crate::error::{io_error, CliResult};
use crate::format;

const GRID_N: usize = 1000;

struct Example {
    f: MonicPolynomial,
    g: MonicPolynomial,
    /// Reference values for the grid thresholds of `f` (max) and `g` (min).
    pstar: (f64, f64),
    /// Reference values for the exact onsets, where available.
    onset: Option<(f64, f64)>,
    f_powers: Vec<f64>,
    g_powers: Vec<f64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn example(n: u8) -> CliResult<Example> {
    Ok(match n {
        1 => Example {
            f: MonicPolynomial::from_real(&[0.7, 0.2, 0.9, 0.0, 0.0])?,
            g: MonicPolynomial::from_real(&[3.0, 2.0, 2.5, 0.0, 0.0])?,
            pstar: (3.40372, -1.24121),
            onset: Some((3.35457, -1.01579)),
            f_powers: schur_hadamard::sweep_points(1.0, 6.0, 0.05)?,
            g_powers: schur_hadamard::sweep_points(-4.0, -0.05, 0.05)?,
        },
        _ => Example {
            f: MonicPolynomial::new(vec![c(0.0, -0.9), c(0.7, 0.0), c(0.0, 0.0), c(0.2, -0.4)])?,
            g: MonicPolynomial::new(vec![c(1.0, -0.5), c(0.0, 0.0), c(2.0, -1.0), c(-1.5, 0.0)])?,
            pstar: (3.69323, -3.40696),
            onset: None,
            f_powers: (1..=100).map(f64::from).collect(),
            g_powers: (-100..=-1).map(f64::from).collect(),
        },
    })
}

struct Row {
    quantity: &'static str,
    reference: f64,
    computed: f64,
    method: String,
}

fn threshold_json(r: &schur_hadamard::Result<ThresholdResult>) -> Value {
    match r {
        Ok(t) => json!(t),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn push_row(
    rows: &mut Vec<Row>,
    quantity: &'static str,
    reference: f64,
    r: &schur_hadamard::Result<ThresholdResult>,
    label: &str,
) {
    if let Ok(t) = r {
        rows.push(Row {
            quantity,
            reference,
            computed: t.value,
            method: label.to_string(),
        });
    }
}

fn comparison_csv(rows: &[Row]) -> String {
    let mut s = String::from("quantity,reference,computed,abs_deviation,method\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.quantity,
            format::number(r.reference),
            format::number(r.computed),
            format::number((r.computed - r.reference).abs()),
            r.method
        );
    }
    s
}

fn powers_with(records: &[SweepRecord], status: StabilityStatus) -> Vec<f64> {
    records.iter().filter(|r| r.status == status).map(|r| r.p).collect()
}

fn sweep_summary(records: &[SweepRecord]) -> Value {
    json!({
        "count": records.len(),
        "unstable": powers_with(records, StabilityStatus::Unstable),
        "marginal": powers_with(records, StabilityStatus::Marginal),
    })
}

pub fn run(n: u8, out: &Path) -> CliResult<String> {
    let ex = example(n)?;
    std::fs::create_dir_all(out).map_err(io_error(out))?;

    let mut rows = Vec::new();
    let mut thresholds = serde_json::Map::new();
    for (name, poly, mode, quantity, reference) in [
        ("f", &ex.f, Mode::Max, "p_star_max", ex.pstar.0),
        ("g", &ex.g, Mode::Min, "p_star_min", ex.pstar.1),
    ] {
        let lattice = pstar_grid_with(poly, mode, GRID_N, GridScheme::Lattice);
        let nested = pstar_grid_with(poly, mode, GRID_N, GridScheme::Nested);
        let exact = pstar_exact(poly, mode, DEFAULT_TOLERANCE);
        let onset = locate_onset(poly, Direction::from(mode), DEFAULT_TOLERANCE);
        push_row(&mut rows, quantity, reference, &lattice, "grid_lattice");
        push_row(&mut rows, quantity, reference, &nested, "grid_nested");
        push_row(&mut rows, quantity, reference, &exact, "equation_solve");
        if let Some(refs) = ex.onset {
            let (q, r) = if name == "f" {
                ("onset_max", refs.0)
            } else {
                ("onset_min", refs.1)
            };
            push_row(&mut rows, q, r, &onset, "bisection");
        }
        thresholds.insert(
            name.to_string(),
            json!({
                "grid_lattice": threshold_json(&lattice),
                "grid_nested": threshold_json(&nested),
                "equation_solve": threshold_json(&exact),
                "onset": threshold_json(&onset),
            }),
        );
    }

    let (f_records, mut files) = write_sweep(
        &ex.f,
        &ex.f_powers,
        out,
        "sweep_f",
        &format!("example {n}: roots of f^[p]"),
    )?;
    let (g_records, g_files) = write_sweep(
        &ex.g,
        &ex.g_powers,
        out,
        "sweep_g",
        &format!("example {n}: roots of g^[q]"),
    )?;
    files.extend(g_files);

    let comparison = out.join("comparison.csv");
    write_file(&comparison, &comparison_csv(&rows))?;
    files.push(comparison.display().to_string());

    let report = json!({
        "example": n,
        "f": format::polynomial(&ex.f),
        "g": format::polynomial(&ex.g),
        "grid_n": GRID_N,
        "thresholds": Value::Object(thresholds),
        "sweeps": {
            "f": sweep_summary(&f_records),
            "g": sweep_summary(&g_records),
        },
    });
    let text = format::to_json_text(report);
    let report_path = out.join("report.json");
    write_file(&report_path, &text)?;
    files.push(report_path.display().to_string());
    Ok(format::to_json_text(json!({ "example": n, "files": files })))
}
