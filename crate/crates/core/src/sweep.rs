//! Root data of `f^[p]` over many powers.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hadamard::principal_power;
use crate::polynomial::MonicPolynomial;
use crate::roots::{find_roots, StabilityStatus};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub p: f64,
    pub status: StabilityStatus,
    pub max_modulus: f64,
    pub roots: Vec<Complex64>,
}

/// `from, from + step, …` up to `to` (inclusive within rounding). Empty when
/// `from > to`.
pub fn sweep_points(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 || !from.is_finite() || !to.is_finite() {
        return Err(Error::InvalidInput(format!(
            "need finite bounds and a positive step, got from={from} to={to} step={step}"
        )));
    }
    if from > to {
        return Ok(Vec::new());
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| from + step * i as f64).collect())
}

/// Principal `f^[p]` at each power, evaluated in parallel and returned
/// sorted by `p`.
pub fn power_sweep(f: &MonicPolynomial, powers: &[f64]) -> Result<Vec<SweepRecord>> {
    let mut records = powers
        .par_iter()
        .map(|&p| {
            let fp = principal_power(f, p);
            if !fp.is_finite() {
                return Err(Error::Unsupported(format!("coefficients of f^[{p}] overflow")));
            }
            let roots = find_roots(&fp)?;
            let max_modulus = roots.max_modulus();
            Ok(SweepRecord {
                p,
                status: StabilityStatus::from_max_modulus(max_modulus),
                max_modulus,
                roots: roots.roots().to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.p.total_cmp(&b.p));
    Ok(records)
}
