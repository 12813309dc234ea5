//! Stability onset by bisection on the root-finder verdict.

use super::{check_tolerance, Direction, ThresholdKind, ThresholdMethod, ThresholdResult};
use crate::error::{Error, Result};
use crate::hadamard::{hadamard_power, principal_power};
use crate::polynomial::{MonicPolynomial, RationalExponent};
use crate::roots::{branch_set_stable, is_schur_stable, StabilityStatus, StabilityVerdict};

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const MAX_ITERATIONS: usize = 200;
/// Initial search interval `[−64, 64]` for `locate_onset`.
pub const DEFAULT_HALF_WIDTH: f64 = 64.0;
/// `locate_onset` doubles the interval up to `[−1024, 1024]`.
pub const MAX_HALF_WIDTH: f64 = 1024.0;
/// Samples taken from the stable end before bisecting.
pub const SCAN_POINTS: usize = 256;
/// Largest denominator checked by `certify_onset_branches`.
const CERTIFY_MAX_DEN: u64 = 6;

fn verdict_at(f: &MonicPolynomial, p: f64) -> Result<StabilityVerdict> {
    let fp = principal_power(f, p);
    if !fp.is_finite() {
        return Err(Error::Unsupported(format!("coefficients of f^[{p}] overflow")));
    }
    is_schur_stable(&fp)
}

/// The stable end and the unstable end of `[lo, hi]` for `direction`.
pub(super) fn ends(direction: Direction, lo: f64, hi: f64) -> (f64, f64) {
    match direction {
        Direction::Increasing => (hi, lo),
        Direction::Decreasing => (lo, hi),
    }
}

/// Bisects for the power where the principal `f^[p]` becomes Schur stable.
///
/// The stable end of `[lo, hi]` (`hi` when increasing) must be Stable and the
/// other end not. The interval is first sampled at `SCAN_POINTS` points
/// starting from the stable end, and the bisection runs between the last
/// stable sample and the first non-stable one, so the crossing found is the
/// one closest to the stable end.
pub fn exact_onset(f: &MonicPolynomial, direction: Direction, lo: f64, hi: f64, tol: f64) -> Result<ThresholdResult> {
    check_tolerance(tol)?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::Bracket {
            lo,
            hi,
            reason: "need finite lo < hi".into(),
        });
    }
    let (stable_end, unstable_end) = ends(direction, lo, hi);
    let s = verdict_at(f, stable_end)?;
    let u = verdict_at(f, unstable_end)?;
    if !s.is_stable() || u.is_stable() {
        return Err(Error::Bracket {
            lo,
            hi,
            reason: format!(
                "expected stable at p = {stable_end} and not stable at p = {unstable_end}, got {} and {}",
                s.status.as_str(),
                u.status.as_str()
            ),
        });
    }

    let step = (unstable_end - stable_end) / SCAN_POINTS as f64;
    let mut good = stable_end;
    let mut bad = unstable_end;
    let mut bad_status = u.status;
    for i in 1..SCAN_POINTS {
        let p = stable_end + step * i as f64;
        let v = verdict_at(f, p)?;
        if v.is_stable() {
            good = p;
        } else {
            bad = p;
            bad_status = v.status;
            break;
        }
    }

    for _ in 0..MAX_ITERATIONS {
        if (bad - good).abs() <= tol {
            break;
        }
        let mid = 0.5 * (good + bad);
        let v = verdict_at(f, mid)?;
        if v.is_stable() {
            good = mid;
        } else {
            bad = mid;
            bad_status = v.status;
        }
    }
    if bad_status == StabilityStatus::Marginal {
        return Err(Error::MarginalZone { at: bad });
    }
    Ok(ThresholdResult {
        kind: ThresholdKind::ExactOnset,
        value: 0.5 * (good + bad),
        method: ThresholdMethod::Bisection,
        bracket: Some((good.min(bad), good.max(bad))),
        grid_resolution: None,
    })
}

/// `exact_onset` on `[−w, w]`, starting at `w = DEFAULT_HALF_WIDTH` and
/// doubling until the end verdicts differ as required or `w` passes
/// `MAX_HALF_WIDTH`.
pub fn locate_onset(f: &MonicPolynomial, direction: Direction, tol: f64) -> Result<ThresholdResult> {
    let mut w = DEFAULT_HALF_WIDTH;
    let mut last = None;
    while w <= MAX_HALF_WIDTH {
        match exact_onset(f, direction, -w, w, tol) {
            Err(e @ Error::Bracket { .. }) => last = Some(e),
            Err(Error::Unsupported(reason)) => {
                return Err(Error::Bracket { lo: -w, hi: w, reason });
            }
            other => return other,
        }
        w *= 2.0;
    }
    Err(last.expect("at least one attempt"))
}

/// Verdict of every branch of `f^[k/m]` at one rational power.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchCertificate {
    pub power: RationalExponent,
    pub verdict: StabilityVerdict,
}

/// Re-checks all branches at the rational powers `k/m`, `m ≤ 6`, inside the
/// onset bracket and at its rounded ends.
pub fn certify_onset_branches(f: &MonicPolynomial, onset: &ThresholdResult) -> Result<Vec<BranchCertificate>> {
    let (lo, hi) = onset
        .bracket
        .ok_or_else(|| Error::InvalidInput("onset has no bracket".into()))?;
    let mut powers: Vec<RationalExponent> = Vec::new();
    for den in 1..=CERTIFY_MAX_DEN {
        let d = den as f64;
        let first = (lo * d).floor() as i64;
        let last = (hi * d).ceil() as i64;
        for num in first..=last {
            powers.push(RationalExponent::new(num, den)?);
        }
    }
    powers.sort();
    powers.dedup();
    powers
        .into_iter()
        .map(|power| {
            let verdict = branch_set_stable(&hadamard_power(f, power))?;
            Ok(BranchCertificate { power, verdict })
        })
        .collect()
}
