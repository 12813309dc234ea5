use std::fs;
use std::path::Path;

use schur_hadamard::threshold::DEFAULT_HALF_WIDTH;
use schur_hadamard::{
    beta_star, branch_count, branch_set_stable, find_roots, fujiwara_bound, guardian_onset, hadamard_power,
    hadamard_product, locate_onset, necessary_condition, principal_power, product_criterion, pstar_exact,
    pstar_grid_with, satisfies_stability_condition, szego_product, Direction, GridScheme, Mode, MonicPolynomial,
    ProductCriterion, RationalExponent, StabilityVerdict, ThresholdResult,
};
use serde_json::{json, Value};

use crate::error::{io_error, CliError, CliResult};
use crate::format;
use crate::input::load;
use crate::svg;

/// Largest branch set `power --all-branches` will enumerate.
pub const MAX_BRANCHES: u64 = 4096;

fn analysis(f: &MonicPolynomial) -> CliResult<Value> {
    let roots = find_roots(f)?;
    let verdict = StabilityVerdict::from_max_modulus(roots.max_modulus());
    let mut v = format::verdict(&verdict);
    v["roots"] = format::complex_list(roots.roots());
    Ok(v)
}

pub fn analyze(path: &Path, witness: bool) -> CliResult<String> {
    let loaded = load(path)?;
    let f = &loaded.poly;
    let mut report = json!({ "polynomial": format::polynomial(f) });
    if let Some(alpha) = loaded.alpha {
        report["commensurate_base"] = json!(alpha.to_string());
    }
    merge(&mut report, analysis(f)?);
    let condition = satisfies_stability_condition(f);
    let bound = condition.witness.as_ref().map(|w| fujiwara_bound(f, w)).transpose()?;
    let condition = if witness {
        condition
    } else {
        condition.without_witness()
    };
    report["criteria"] = json!([condition, necessary_condition(f)]);
    report["fujiwara_bound"] = json!(bound);
    Ok(format::to_json_text(report))
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

pub fn power(path: &Path, p: &str, all_branches: bool) -> CliResult<String> {
    let f = load(path)?.poly;
    let exponent: RationalExponent = p.parse()?;
    let count = branch_count(&f, exponent);
    let mut report = json!({
        "exponent": exponent.to_string(),
        "branch_count": count,
    });
    if all_branches {
        match count {
            Some(c) if c <= MAX_BRANCHES => {}
            _ => {
                return Err(CliError::Input(format!(
                    "f^[{exponent}] has more than {MAX_BRANCHES} branches"
                )))
            }
        }
        let set = hadamard_power(&f, exponent);
        let verdict = branch_set_stable(&set)?;
        let mut members = Vec::with_capacity(set.len());
        for (member, index) in set.members().iter().zip(set.branch_index()) {
            let mut m = json!({ "branch_index": index, "polynomial": format::polynomial(member) });
            merge(&mut m, analysis(member)?);
            members.push(m);
        }
        merge(&mut report, format::verdict(&verdict));
        report["members"] = Value::Array(members);
    } else {
        let member = principal_power(&f, exponent.to_f64());
        let mut m = json!({
            "branch_index": vec![0; f.support().len()],
            "polynomial": format::polynomial(&member),
        });
        let a = analysis(&member)?;
        merge(
            &mut report,
            json!({"stable": a["stable"], "status": a["status"], "max_modulus": a["max_modulus"], "margin": a["margin"]}),
        );
        merge(&mut m, a);
        report["members"] = json!([m]);
    }
    Ok(format::to_json_text(report))
}

pub fn product(f: &Path, g: &Path, szego: bool, criterion: Option<ProductCriterion>) -> CliResult<String> {
    let f = load(f)?.poly;
    let g = load(g)?.poly;
    let (name, prod) = if szego {
        ("szego", szego_product(&f, &g)?)
    } else {
        ("hadamard", hadamard_product(&f, &g)?)
    };
    let mut report = json!({ "product": name, "polynomial": format::polynomial(&prod) });
    merge(&mut report, analysis(&prod)?);
    report["condition"] = json!(satisfies_stability_condition(&prod));
    report["criterion"] = match criterion {
        Some(c) => json!(product_criterion(&f, &g, c)?),
        None => Value::Null,
    };
    Ok(format::to_json_text(report))
}

pub enum Method {
    Grid(GridScheme),
    Exact,
    Onset,
    Beta,
    Guardian,
}

pub fn compute_threshold(
    f: &MonicPolynomial,
    mode: Mode,
    method: &Method,
    grid_n: usize,
    tol: f64,
) -> CliResult<ThresholdResult> {
    Ok(match method {
        Method::Grid(scheme) => pstar_grid_with(f, mode, grid_n, *scheme)?,
        Method::Exact => pstar_exact(f, mode, tol)?,
        Method::Onset => locate_onset(f, Direction::from(mode), tol)?,
        Method::Beta => beta_star(f, mode)?,
        Method::Guardian => guardian_onset(f, Direction::from(mode), -DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH, tol)?,
    })
}

pub fn threshold(path: &Path, mode: Mode, method: Method, grid_n: usize, tol: f64) -> CliResult<String> {
    let f = load(path)?.poly;
    let result = compute_threshold(&f, mode, &method, grid_n, tol)?;
    Ok(format::to_json_text(json!(result)))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(io_error(path))
}

/// Writes `<stem>.csv` and, for a non-empty sweep, `<stem>.svg` into `out`.
/// Returns the records together with the paths written.
pub fn write_sweep(
    f: &MonicPolynomial,
    powers: &[f64],
    out: &Path,
    stem: &str,
    title: &str,
) -> CliResult<(Vec<schur_hadamard::SweepRecord>, Vec<String>)> {
    fs::create_dir_all(out).map_err(io_error(out))?;
    let records = schur_hadamard::power_sweep(f, powers)?;
    let csv_path = out.join(format!("{stem}.csv"));
    write_file(&csv_path, &format::csv(&records, f.degree()))?;
    let mut written = vec![csv_path.display().to_string()];
    if !records.is_empty() {
        let svg_path = out.join(format!("{stem}.svg"));
        write_file(&svg_path, &svg::root_plot(&records, title))?;
        written.push(svg_path.display().to_string());
    }
    Ok((records, written))
}

pub fn sweep(path: &Path, from: f64, to: f64, step: f64, out: &Path) -> CliResult<String> {
    let f = load(path)?.poly;
    let powers = schur_hadamard::sweep_points(from, to, step)?;
    let title = format!(
        "roots of f^[p], p from {} to {}",
        format::number(from),
        format::number(to)
    );
    let (records, written) = write_sweep(&f, &powers, out, "sweep", &title)?;
    let unstable: Vec<f64> = records.iter().filter(|r| !r.status_is_stable()).map(|r| r.p).collect();
    Ok(format::to_json_text(json!({
        "records": records.len(),
        "files": written,
        "not_stable_at": unstable,
    })))
}

trait StatusExt {
    fn status_is_stable(&self) -> bool;
}

impl StatusExt for schur_hadamard::SweepRecord {
    fn status_is_stable(&self) -> bool {
        self.status == schur_hadamard::StabilityStatus::Stable
    }
}
