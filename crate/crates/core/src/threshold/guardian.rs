//! Guardian map along the Hadamard-power path.
//!
//! For a real monic `r` with companion matrix `K`, the value
//! `r(1) · r(−1) · det(C₂(K) − I)` is the product of `r(±1)` and of
//! `z_i z_j − 1` over root pairs `i < j`. It vanishes when a real root sits at
//! `±1` or when two roots have product 1, which for complex-conjugate pairs
//! means `|z| = 1`. Each such event flips the sign as it is crossed.

use super::onset::ends;
use super::{check_tolerance, Direction, ThresholdKind, ThresholdMethod, ThresholdResult, MAX_ITERATIONS, SCAN_POINTS};
use crate::error::{Error, Result};
use crate::hadamard::{principal_power, real_form};
use crate::linalg::{companion, determinant, kronecker, second_compound};
use crate::polynomial::MonicPolynomial;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Largest degree of the real polynomial fed to the determinant.
pub const MAX_GUARDIAN_DEGREE: usize = 12;

fn real_companion(r: &MonicPolynomial) -> Result<(DMatrix<f64>, f64)> {
    if !r.is_real() {
        return Err(Error::InvalidInput("guardian value needs real coefficients".into()));
    }
    if r.degree() > MAX_GUARDIAN_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: r.degree(),
            max: MAX_GUARDIAN_DEGREE,
        });
    }
    let coeffs: Vec<f64> = r.coeffs().iter().map(|c| c.re).collect();
    let ends = r.eval(Complex64::new(1.0, 0.0)).re * r.eval(Complex64::new(-1.0, 0.0)).re;
    Ok((companion(&coeffs), ends))
}

/// `r(1) · r(−1) · det(C₂(K) − I)` for a real monic `r`.
pub fn guardian_value(r: &MonicPolynomial) -> Result<f64> {
    let (k, ends) = real_companion(r)?;
    let c2 = second_compound(&k);
    let m = c2.nrows();
    Ok(ends * determinant(c2 - DMatrix::identity(m, m)))
}

/// `r(1) · r(−1) · det(K ⊗ K − I)`. Equals the square of `guardian_value`,
/// so it never changes sign.
pub fn kronecker_guardian_value(r: &MonicPolynomial) -> Result<f64> {
    let (k, ends) = real_companion(r)?;
    let kk = kronecker(&k, &k);
    let m = kk.nrows();
    Ok(ends * determinant(kk - DMatrix::identity(m, m)))
}

/// Guardian value of the principal `f^[p]`, or of its real form
/// `conj(f^[p]) · f^[p]` when the power has non-real coefficients.
pub fn guardian_map(f: &MonicPolynomial, p: f64) -> Result<f64> {
    let fp = principal_power(f, p);
    if !fp.is_finite() {
        return Err(Error::Unsupported(format!("coefficients of f^[{p}] overflow")));
    }
    if fp.is_real() {
        guardian_value(&fp)
    } else {
        guardian_value(&real_form(&fp))
    }
}

/// Sign change of `guardian_map(f, ·)` nearest the stable end of `[lo, hi]`,
/// located by sampling from that end and bisecting.
pub fn guardian_onset(
    f: &MonicPolynomial,
    direction: Direction,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<ThresholdResult> {
    check_tolerance(tol)?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::Bracket {
            lo,
            hi,
            reason: "need finite lo < hi".into(),
        });
    }
    let (start, end) = ends(direction, lo, hi);
    let sign = guardian_map(f, start)?.signum();
    let step = (end - start) / SCAN_POINTS as f64;
    let mut same = start;
    let mut other = None;
    for i in 1..=SCAN_POINTS {
        let p = if i == SCAN_POINTS { end } else { start + step * i as f64 };
        if guardian_map(f, p)?.signum() == sign {
            same = p;
        } else {
            other = Some(p);
            break;
        }
    }
    let mut other = other.ok_or_else(|| Error::Bracket {
        lo,
        hi,
        reason: "guardian map keeps one sign on the sampled points".into(),
    })?;
    for _ in 0..MAX_ITERATIONS {
        if (other - same).abs() <= tol {
            break;
        }
        let mid = 0.5 * (same + other);
        if guardian_map(f, mid)?.signum() == sign {
            same = mid;
        } else {
            other = mid;
        }
    }
    Ok(ThresholdResult {
        kind: ThresholdKind::ExactOnset,
        value: 0.5 * (same + other),
        method: ThresholdMethod::GuardianMap,
        bracket: Some((same.min(other), same.max(other))),
        grid_resolution: None,
    })
}
