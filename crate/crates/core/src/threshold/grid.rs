//! Grid approximations of the sufficient thresholds.
//!
//! `Lattice` uses every weight vector `(c_1, …, c_d)/R` with positive integers
//! `c_k` summing to `R`. The objective at such a point is `max_k v_k(c_k)`
//! (mode max) with `v_k(c) = ln(c/R) / ln|a_k|`, and `max_k v_k(c_k) ≤ p`
//! holds exactly when each `c_k` is at least the smallest `c` with
//! `v_k(c) ≤ p`. So the grid optimum is the least candidate value `v_k(c)`
//! for which those smallest counts sum to at most `R`, found by bisection
//! over the sorted candidates instead of enumerating the lattice. Mode min is
//! the mirror image.
//!
//! `Nested` is the three-weight family `{ml/R², m(R−l)/R², (R−m)/R}` with
//! `1 ≤ m, l < R`, tried under all six assignments of weights to the support.

use rayon::prelude::*;

use super::{support_moduli, vacuous, Mode, ThresholdMethod, ThresholdResult};
use crate::error::{Error, Result};
use crate::polynomial::MonicPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum GridScheme {
    #[default]
    Lattice,
    Nested,
}

impl std::str::FromStr for GridScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lattice" => Ok(GridScheme::Lattice),
            "nested" => Ok(GridScheme::Nested),
            other => Err(Error::InvalidInput(format!("unknown grid scheme {other:?}"))),
        }
    }
}

pub fn pstar_grid(f: &MonicPolynomial, mode: Mode, grid_n: usize) -> Result<ThresholdResult> {
    pstar_grid_with(f, mode, grid_n, GridScheme::Lattice)
}

pub fn pstar_grid_with(f: &MonicPolynomial, mode: Mode, grid_n: usize, scheme: GridScheme) -> Result<ThresholdResult> {
    if grid_n == 0 {
        return Err(Error::InvalidInput("grid resolution must be positive".into()));
    }
    let pairs = support_moduli(f, mode)?;
    if pairs.is_empty() {
        return Ok(vacuous(mode, ThresholdMethod::GridSearch, Some(grid_n)));
    }
    let logs: Vec<f64> = pairs.iter().map(|(_, m)| m.ln()).collect();
    let value = match scheme {
        GridScheme::Lattice => lattice(&logs, mode, grid_n)?,
        GridScheme::Nested => nested(&logs, mode, grid_n)?,
    };
    Ok(ThresholdResult {
        kind: super::sufficient_kind(mode),
        value,
        method: ThresholdMethod::GridSearch,
        bracket: None,
        grid_resolution: Some(grid_n),
    })
}

fn ratio(count: usize, grid_n: usize, log_modulus: f64) -> f64 {
    (count as f64 / grid_n as f64).ln() / log_modulus
}

/// Whether `v` is at least as good as `p` in the given mode.
fn meets(mode: Mode, v: f64, p: f64) -> bool {
    match mode {
        Mode::Max => v <= p,
        Mode::Min => v >= p,
    }
}

/// Smallest `c ∈ [1, R]` with `ratio(c)` meeting `p`, if any. The ratio is
/// monotone in `c` in the direction that makes larger counts better.
fn min_count(log_modulus: f64, grid_n: usize, mode: Mode, p: f64) -> Option<usize> {
    if !meets(mode, ratio(grid_n, grid_n, log_modulus), p) {
        return None;
    }
    let (mut lo, mut hi) = (1, grid_n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if meets(mode, ratio(mid, grid_n, log_modulus), p) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

fn feasible(logs: &[f64], mode: Mode, grid_n: usize, p: f64) -> bool {
    let mut total = 0usize;
    for &l in logs {
        match min_count(l, grid_n, mode, p) {
            Some(c) => total += c,
            None => return false,
        }
        if total > grid_n {
            return false;
        }
    }
    true
}

fn lattice(logs: &[f64], mode: Mode, grid_n: usize) -> Result<f64> {
    if grid_n < logs.len() {
        return Err(Error::InvalidInput(format!(
            "grid resolution {grid_n} is smaller than |N_f| = {}",
            logs.len()
        )));
    }
    let mut candidates: Vec<f64> = logs
        .iter()
        .flat_map(|&l| (1..=grid_n).map(move |c| ratio(c, grid_n, l)))
        .collect();
    // Order candidates from best to worst so feasibility is monotone.
    match mode {
        Mode::Max => candidates.sort_by(|a, b| a.total_cmp(b)),
        Mode::Min => candidates.sort_by(|a, b| b.total_cmp(a)),
    }
    candidates.dedup();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    debug_assert!(feasible(logs, mode, grid_n, candidates[hi]));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(logs, mode, grid_n, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn nested(logs: &[f64], mode: Mode, grid_n: usize) -> Result<f64> {
    if logs.len() != 3 {
        return Err(Error::Unsupported(format!(
            "the nested grid needs exactly three nonzero coefficients, found {}",
            logs.len()
        )));
    }
    if grid_n < 2 {
        return Err(Error::InvalidInput(
            "the nested grid needs resolution at least 2".into(),
        ));
    }
    let ln_table: Vec<f64> = (0..=grid_n).map(|i| (i as f64).ln()).collect();
    let ln_n = ln_table[grid_n];
    let better = move |a: f64, b: f64| match mode {
        Mode::Max => a.min(b),
        Mode::Min => a.max(b),
    };
    let worst_of = move |a: f64, b: f64| match mode {
        Mode::Max => a.max(b),
        Mode::Min => a.min(b),
    };
    let start = match mode {
        Mode::Max => f64::INFINITY,
        Mode::Min => f64::NEG_INFINITY,
    };
    let best = (1..grid_n)
        .into_par_iter()
        .map(|m| {
            let mut best = start;
            let third = ln_table[grid_n - m] - ln_n;
            for l in 1..grid_n {
                let slots = [
                    ln_table[m] + ln_table[l] - 2.0 * ln_n,
                    ln_table[m] + ln_table[grid_n - l] - 2.0 * ln_n,
                    third,
                ];
                for perm in PERMUTATIONS {
                    let v = (0..3)
                        .map(|k| slots[perm[k]] / logs[k])
                        .reduce(worst_of)
                        .expect("three slots");
                    best = better(best, v);
                }
            }
            best
        })
        .reduce(|| start, better);
    Ok(best)
}
