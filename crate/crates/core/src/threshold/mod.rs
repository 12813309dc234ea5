//! Power thresholds for Hadamard powers `f^[p]`.
//!
//! * `pstar_grid` / `pstar_exact`: powers beyond which every `f^[p]` meets
//!   the sufficient stability condition.
//! * `beta_star` / `kstar_test`: powers beyond which `f^[p]` violates the
//!   binomial necessary condition.
//! * `exact_onset` / `guardian_onset`: the power at which the largest root
//!   modulus of `f^[p]` crosses 1.
//!
//! # The equation-solving reduction
//!
//! Let all `|a_k| < 1` on `N_f` and let `p₀` solve `Σ_{k∈N_f} |a_k|^{p₀} = 1`.
//! For any weights `λ ∈ Λ_f` and any `p < p₀` we have `Σ |a_k|^p > 1 ≥ Σ λ_k`,
//! so some `λ_k < |a_k|^p`, i.e. `ln λ_k / ln|a_k| > p`; hence
//! `max_k ln λ_k / ln|a_k| ≥ p₀` on all of `Λ_f`. The weights
//! `λ_k = |a_k|^{p₀}` lie in `Λ_f` (they sum to exactly 1) and reach `p₀`, so
//! the infimum over `Λ_f` is attained and equals `p₀`. With all `|a_k| > 1` the
//! same argument with reversed inequalities gives the supremum.

mod grid;
mod guardian;
mod onset;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polynomial::{binomial, MonicPolynomial};

pub use grid::{pstar_grid, pstar_grid_with, GridScheme};
pub use guardian::{guardian_map, guardian_onset, guardian_value, kronecker_guardian_value, MAX_GUARDIAN_DEGREE};
pub use onset::{
    certify_onset_branches, exact_onset, locate_onset, BranchCertificate, DEFAULT_HALF_WIDTH, DEFAULT_TOLERANCE,
    MAX_HALF_WIDTH, MAX_ITERATIONS, SCAN_POINTS,
};

/// Accepted `|Σ|a_k|^{p₀} − 1|` at the solution of the reduced equation.
pub const EQUATION_RESIDUAL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThresholdKind {
    SufficientMax,
    SufficientMin,
    InstabilityMax,
    InstabilityMin,
    ExactOnset,
}

impl ThresholdKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThresholdKind::SufficientMax => "sufficient_max",
            ThresholdKind::SufficientMin => "sufficient_min",
            ThresholdKind::InstabilityMax => "instability_max",
            ThresholdKind::InstabilityMin => "instability_min",
            ThresholdKind::ExactOnset => "exact_onset",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThresholdMethod {
    GridSearch,
    EquationSolve,
    Bisection,
    GuardianMap,
    /// A finite min/max of explicit ratios.
    ClosedForm,
}

impl ThresholdMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThresholdMethod::GridSearch => "grid_search",
            ThresholdMethod::EquationSolve => "equation_solve",
            ThresholdMethod::Bisection => "bisection",
            ThresholdMethod::GuardianMap => "guardian_map",
            ThresholdMethod::ClosedForm => "closed_form",
        }
    }
}

/// A computed threshold. `value` is `−∞` / `+∞` when the statement holds
/// for every power.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdResult {
    pub kind: ThresholdKind,
    pub value: f64,
    pub method: ThresholdMethod,
    pub bracket: Option<(f64, f64)>,
    pub grid_resolution: Option<usize>,
}

/// Finite numbers as numbers, infinities as the strings `"inf"` / `"-inf"`.
pub(crate) fn serialize_extended<S: Serializer>(x: f64, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        serializer.serialize_f64(x)
    } else if x > 0.0 {
        serializer.serialize_str("inf")
    } else if x < 0.0 {
        serializer.serialize_str("-inf")
    } else {
        serializer.serialize_str("nan")
    }
}

struct Extended(f64);

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_extended(self.0, serializer)
    }
}

impl Serialize for ThresholdResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ThresholdResult", 5)?;
        s.serialize_field("kind", self.kind.as_str())?;
        s.serialize_field("value", &Extended(self.value))?;
        s.serialize_field("method", self.method.as_str())?;
        s.serialize_field("bracket", &self.bracket.map(|(lo, hi)| [lo, hi]))?;
        s.serialize_field("grid_n", &self.grid_resolution)?;
        s.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Max,
    Min,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Mode::Max),
            "min" => Ok(Mode::Min),
            other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
        }
    }
}

/// Which way stability is gained: `Increasing` means unstable below the
/// onset and stable above it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl From<Mode> for Direction {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Max => Direction::Increasing,
            Mode::Min => Direction::Decreasing,
        }
    }
}

/// `(k, |a_k|)` on `N_f`, checking the one-sided modulus hypothesis of `mode`.
pub(crate) fn support_moduli(f: &MonicPolynomial, mode: Mode) -> Result<Vec<(usize, f64)>> {
    let pairs: Vec<(usize, f64)> = f.support().into_iter().map(|k| (k, f.coeff(k).norm())).collect();
    for &(k, m) in &pairs {
        match mode {
            Mode::Max if m >= 1.0 => {
                return Err(Error::not_applicable(format!("|a_{k}| = {m} is not below 1"), Some(k)));
            }
            Mode::Min if m <= 1.0 => {
                return Err(Error::not_applicable(format!("|a_{k}| = {m} is not above 1"), Some(k)));
            }
            _ => {}
        }
    }
    Ok(pairs)
}

pub(crate) fn sufficient_kind(mode: Mode) -> ThresholdKind {
    match mode {
        Mode::Max => ThresholdKind::SufficientMax,
        Mode::Min => ThresholdKind::SufficientMin,
    }
}

/// Result for `N_f = ∅`: `s^n` is stable at every power.
pub(crate) fn vacuous(mode: Mode, method: ThresholdMethod, grid_resolution: Option<usize>) -> ThresholdResult {
    ThresholdResult {
        kind: sufficient_kind(mode),
        value: match mode {
            Mode::Max => f64::NEG_INFINITY,
            Mode::Min => f64::INFINITY,
        },
        method,
        bracket: None,
        grid_resolution,
    }
}

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "tolerance {tol} must be positive and finite"
        )))
    }
}

/// `Σ |a_k|^p − 1`.
fn power_sum_excess(log_moduli: &[f64], p: f64) -> f64 {
    log_moduli.iter().map(|l| (p * l).exp()).sum::<f64>() - 1.0
}

/// `Σ_{k∈N_f} |a_k|^p` at a given power.
pub fn power_sum(f: &MonicPolynomial, p: f64) -> f64 {
    f.support().iter().map(|&k| f.coeff(k).norm().powf(p)).sum()
}

/// The unique root `p₀` of `Σ_{k∈N_f} |a_k|^p = 1`, which equals the
/// threshold of the stability condition (see the module docs).
pub fn pstar_exact(f: &MonicPolynomial, mode: Mode, tol: f64) -> Result<ThresholdResult> {
    check_tolerance(tol)?;
    let pairs = support_moduli(f, mode)?;
    if pairs.is_empty() {
        return Ok(vacuous(mode, ThresholdMethod::EquationSolve, None));
    }
    let logs: Vec<f64> = pairs.iter().map(|(_, m)| m.ln()).collect();
    let d = logs.len() as f64;
    // Σ e^{p ln m} is d at p = 0 and at most 1 once d·max^p ≤ 1.
    let (mut lo, mut hi) = match mode {
        Mode::Max => {
            let worst = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (0.0, d.ln() / -worst)
        }
        Mode::Min => {
            let worst = logs.iter().copied().fold(f64::INFINITY, f64::min);
            (-d.ln() / worst, 0.0)
        }
    };
    if lo == hi {
        return Ok(ThresholdResult {
            kind: sufficient_kind(mode),
            value: lo,
            method: ThresholdMethod::EquationSolve,
            bracket: Some((lo, hi)),
            grid_resolution: None,
        });
    }
    // excess at lo has the sign `lo_sign`; at hi the opposite (or zero).
    let lo_sign = power_sum_excess(&logs, lo).signum();
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let e = power_sum_excess(&logs, mid);
        if e == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if e.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol && power_sum_excess(&logs, 0.5 * (lo + hi)).abs() <= EQUATION_RESIDUAL {
            break;
        }
    }
    Ok(ThresholdResult {
        kind: sufficient_kind(mode),
        value: 0.5 * (lo + hi),
        method: ThresholdMethod::EquationSolve,
        bracket: Some((lo, hi)),
        grid_resolution: None,
    })
}

/// `β*_max = min_{|a_k|>1} ln C(n,k) / ln|a_k|` or
/// `β*_min = max_{0<|a_k|<1} ln C(n,k) / ln|a_k|`. Beyond it `f^[p]` fails
/// the binomial necessary condition.
pub fn beta_star(f: &MonicPolynomial, mode: Mode) -> Result<ThresholdResult> {
    let n = f.degree();
    let ratios: Vec<f64> = f
        .support()
        .into_iter()
        .filter_map(|k| {
            let m = f.coeff(k).norm();
            let keep = match mode {
                Mode::Max => m > 1.0,
                Mode::Min => m < 1.0,
            };
            keep.then(|| binomial(n, k).ln() / m.ln())
        })
        .collect();
    let (kind, value) = match mode {
        Mode::Max => (ThresholdKind::InstabilityMax, ratios.iter().copied().reduce(f64::min)),
        Mode::Min => (ThresholdKind::InstabilityMin, ratios.iter().copied().reduce(f64::max)),
    };
    let value = value.ok_or_else(|| {
        let set = if mode == Mode::Max {
            "{k : |a_k| > 1}"
        } else {
            "{k : 0 < |a_k| < 1}"
        };
        Error::not_applicable(format!("{set} is empty"), None)
    })?;
    Ok(ThresholdResult {
        kind,
        value,
        method: ThresholdMethod::ClosedForm,
        bracket: None,
        grid_resolution: None,
    })
}

/// Half-lines of powers on which `f^[p]` is certainly not Schur stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfLine {
    NonPositive,
    NonNegative,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KStar {
    pub kstar: usize,
    pub unstable_for: HalfLine,
}

/// Smallest index `k*` of `N_f`; `|a_{k*}| ≤ 1` rules out stability for
/// `p ≤ 0`, `|a_{k*}| ≥ 1` for `p ≥ 0`.
pub fn kstar_test(f: &MonicPolynomial) -> Result<KStar> {
    let kstar = *f
        .support()
        .first()
        .ok_or_else(|| Error::not_applicable("N_f is empty", None))?;
    let m = f.coeff(kstar).norm();
    let unstable_for = if m == 1.0 {
        HalfLine::Both
    } else if m < 1.0 {
        HalfLine::NonPositive
    } else {
        HalfLine::NonNegative
    };
    Ok(KStar { kstar, unstable_for })
}
