//! All-roots solver and Schur stability verdicts.
//!
//! Roots come from Aberth–Ehrlich simultaneous iteration on a rescaled copy of
//! the polynomial, started from Newton-polygon circles. If some root does not
//! reach the backward-error tolerance, the eigenvalues of the companion matrix
//! are tried as well and the better set is kept.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::criteria::SimplexWeights;
use crate::error::{Error, Result};
use crate::hadamard::BranchSet;
use crate::linalg::{companion, complex_eigenvalues};
use crate::polynomial::{expand_roots, MonicPolynomial};

/// Per-root relative backward error accepted without further checks.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Half-width of the band around the unit circle reported as `Marginal`.
pub const BOUNDARY_BAND: f64 = 1e-9;
/// Aberth sweep cap.
pub const MAX_SWEEPS: usize = 200;
/// Normwise coefficient error accepted when individual residuals are not
/// (clustered roots).
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMethod {
    /// Only zero roots, or a linear factor.
    Direct,
    Aberth,
    Companion,
}

/// The roots of a polynomial, sorted by nondecreasing modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    roots: Vec<Complex64>,
    residuals: Vec<f64>,
    method: RootMethod,
}

impl RootSet {
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// Relative backward error `|f(z)| / Σ|a_k||z|^k` of each root.
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn method(&self) -> RootMethod {
        self.method
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let roots: Vec<[f64; 2]> = self.roots.iter().map(|z| [z.re, z.im]).collect();
        let mut s = serializer.serialize_struct("RootSet", 2)?;
        s.serialize_field("roots", &roots)?;
        s.serialize_field("max_modulus", &self.max_modulus())?;
        s.end()
    }
}

/// `p(z)`, `p'(z)` and `Σ|c_k||z|^k` for the monic polynomial with
/// non-leading coefficients `c`.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let r = z.norm();
    let mut p = ONE;
    let mut dp = ZERO;
    let mut abs = 1.0;
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
        abs = abs * r + ck.norm();
    }
    (p, dp, abs)
}

fn backward_error(c: &[Complex64], z: Complex64) -> f64 {
    let (p, _, abs) = horner(c, z);
    if abs == 0.0 {
        0.0
    } else {
        p.norm() / abs
    }
}

/// Starting points on the circles given by the upper convex hull of
/// `(k, ln|c_k|)`.
fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let m = c.len();
    let mut points: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, ck)| **ck != ZERO)
        .map(|(k, ck)| (k, ck.norm().ln()))
        .collect();
    points.push((m, 0.0));

    let mut hull: Vec<(usize, f64)> = Vec::with_capacity(points.len());
    for &pt in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 as f64 - x1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - x1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let mut guesses = Vec::with_capacity(m);
    for (seg, pair) in hull.windows(2).enumerate() {
        let (k0, y0) = pair[0];
        let (k1, y1) = pair[1];
        let count = k1 - k0;
        let radius = ((y0 - y1) / count as f64).exp();
        let offset = 0.4 + 2.0 * PI * seg as f64 / m as f64;
        for j in 0..count {
            let theta = 2.0 * PI * j as f64 / count as f64 + offset;
            guesses.push(Complex64::from_polar(radius, theta));
        }
    }
    guesses
}

/// Gauss–Seidel Aberth iteration. Returns `None` on non-finite iterates.
fn aberth(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let m = c.len();
    let mut z = initial_guesses(c);
    let mut done = vec![false; m];
    let stop = 8.0 * (m as f64 + 1.0) * f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut all_done = true;
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (p, dp, abs) = horner(c, z[i]);
            if p.norm() <= stop * abs {
                done[i] = true;
                continue;
            }
            all_done = false;
            if dp == ZERO {
                let nudge = Complex64::from_polar(1e-8 * (1.0 + z[i].norm()), 0.7 + i as f64);
                z[i] += nudge;
                continue;
            }
            let ratio = p / dp;
            let mut repulsion = ZERO;
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let d = z[i] - zj;
                    if d != ZERO {
                        repulsion += ONE / d;
                    }
                }
            }
            let step = ratio / (ONE - ratio * repulsion);
            z[i] -= step;
            if !(z[i].re.is_finite() && z[i].im.is_finite()) {
                return None;
            }
        }
        if all_done {
            break;
        }
    }
    Some(z)
}

fn worst(residuals: &[f64]) -> f64 {
    residuals.iter().copied().fold(0.0, f64::max)
}

fn reconstruction_error(c: &[Complex64], roots: &[Complex64]) -> f64 {
    let full = expand_roots(roots);
    let scale = c.iter().map(|x| x.norm()).fold(1.0, f64::max);
    c.iter().zip(&full).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale
}

/// Finds all `n` roots of `f`, counted with multiplicity, sorted by modulus.
pub fn find_roots(f: &MonicPolynomial) -> Result<RootSet> {
    if !f.is_finite() {
        return Err(Error::InvalidInput("polynomial has non-finite coefficients".into()));
    }
    let n = f.degree();
    let zeros = f.coeffs().iter().take_while(|c| **c == ZERO).count();
    let reduced = &f.coeffs()[zeros.min(n)..];
    let m = reduced.len();

    let mut roots = vec![ZERO; zeros];
    let mut residuals = vec![0.0; zeros];
    if m == 0 {
        return Ok(RootSet {
            roots,
            residuals,
            method: RootMethod::Direct,
        });
    }

    // s = ρ t with ρ = max |b_j|^{1/(m-j)}; all roots of the scaled
    // polynomial then lie in |t| < 2.
    let log_rho = reduced
        .iter()
        .enumerate()
        .filter(|(_, b)| **b != ZERO)
        .map(|(j, b)| b.norm().ln() / (m - j) as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<Complex64> = reduced
        .iter()
        .enumerate()
        .map(|(j, &b)| {
            if b == ZERO {
                ZERO
            } else {
                Complex64::from_polar((b.norm().ln() - (m - j) as f64 * log_rho).exp(), b.arg())
            }
        })
        .collect();
    let rho = log_rho.exp();

    // Coefficients that underflow after scaling leave roots below the
    // smallest representable magnitude; they are reported as zeros.
    let underflow = scaled.iter().take_while(|c| **c == ZERO).count();
    roots.extend(std::iter::repeat_n(ZERO, underflow));
    residuals.extend(std::iter::repeat_n(0.0, underflow));
    let scaled = &scaled[underflow..];
    let m = scaled.len();

    let (scaled_roots, method) = if m == 1 {
        (vec![-scaled[0]], RootMethod::Direct)
    } else {
        solve_scaled(scaled).map_err(|e| match e {
            Error::Unconverged {
                partial,
                worst_residual,
                member,
            } => Error::Unconverged {
                partial: partial.into_iter().map(|t| t * rho).collect(),
                worst_residual,
                member,
            },
            other => other,
        })?
    };

    for t in scaled_roots {
        residuals.push(backward_error(scaled, t));
        roots.push(t * rho);
    }

    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| {
        roots[a]
            .norm()
            .partial_cmp(&roots[b].norm())
            .unwrap_or(Ordering::Equal)
            .then(roots[a].arg().partial_cmp(&roots[b].arg()).unwrap_or(Ordering::Equal))
    });
    Ok(RootSet {
        roots: order.iter().map(|&i| roots[i]).collect(),
        residuals: order.iter().map(|&i| residuals[i]).collect(),
        method,
    })
}

fn solve_scaled(c: &[Complex64]) -> Result<(Vec<Complex64>, RootMethod)> {
    let measure = |z: &[Complex64]| worst(&z.iter().map(|&t| backward_error(c, t)).collect::<Vec<_>>());

    let mut best: Option<(Vec<Complex64>, RootMethod, f64)> = None;
    if let Some(z) = aberth(c) {
        let err = measure(&z);
        if err <= RESIDUAL_TOLERANCE {
            return Ok((z, RootMethod::Aberth));
        }
        best = Some((z, RootMethod::Aberth, err));
    }
    if let Some(z) = complex_eigenvalues(companion(c)) {
        let err = measure(&z);
        if best.as_ref().is_none_or(|b| err < b.2) {
            best = Some((z, RootMethod::Companion, err));
        }
    }
    match best {
        Some((z, method, err))
            if err <= RESIDUAL_TOLERANCE || reconstruction_error(c, &z) <= RECONSTRUCTION_TOLERANCE =>
        {
            Ok((z, method))
        }
        Some((z, _, err)) => Err(Error::Unconverged {
            partial: z,
            worst_residual: err,
            member: None,
        }),
        None => Err(Error::Unconverged {
            partial: Vec::new(),
            worst_residual: f64::INFINITY,
            member: None,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityStatus {
    Stable,
    Unstable,
    Marginal,
}

impl StabilityStatus {
    pub fn from_max_modulus(max_modulus: f64) -> Self {
        if max_modulus < 1.0 - BOUNDARY_BAND {
            StabilityStatus::Stable
        } else if max_modulus > 1.0 + BOUNDARY_BAND {
            StabilityStatus::Unstable
        } else {
            StabilityStatus::Marginal
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            StabilityStatus::Stable => "stable",
            StabilityStatus::Unstable => "unstable",
            StabilityStatus::Marginal => "marginal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub max_modulus: f64,
    /// `max_modulus - 1`.
    pub margin: f64,
}

impl StabilityVerdict {
    pub fn from_max_modulus(max_modulus: f64) -> Self {
        Self {
            status: StabilityStatus::from_max_modulus(max_modulus),
            max_modulus,
            margin: max_modulus - 1.0,
        }
    }

    pub fn is_stable(&self) -> bool {
        self.status == StabilityStatus::Stable
    }
}

/// Schur stability: every root strictly inside the unit disc.
pub fn is_schur_stable(f: &MonicPolynomial) -> Result<StabilityVerdict> {
    Ok(StabilityVerdict::from_max_modulus(find_roots(f)?.max_modulus()))
}

/// A branch set is stable when every member is; the reported modulus is the
/// worst one over all members.
pub fn branch_set_stable(b: &BranchSet) -> Result<StabilityVerdict> {
    let mut worst_modulus: f64 = 0.0;
    let mut any_marginal = false;
    let mut any_unstable = false;
    for (i, member) in b.members().iter().enumerate() {
        let roots = find_roots(member).map_err(|e| match e {
            Error::Unconverged {
                partial,
                worst_residual,
                ..
            } => Error::Unconverged {
                partial,
                worst_residual,
                member: Some(i),
            },
            other => other,
        })?;
        let r = roots.max_modulus();
        worst_modulus = worst_modulus.max(r);
        match StabilityStatus::from_max_modulus(r) {
            StabilityStatus::Unstable => any_unstable = true,
            StabilityStatus::Marginal => any_marginal = true,
            StabilityStatus::Stable => {}
        }
    }
    let status = if any_unstable {
        StabilityStatus::Unstable
    } else if any_marginal {
        StabilityStatus::Marginal
    } else {
        StabilityStatus::Stable
    };
    Ok(StabilityVerdict {
        status,
        max_modulus: worst_modulus,
        margin: worst_modulus - 1.0,
    })
}

/// A-priori root bound `max_{k∈N_f} (|a_k|/λ_k)^{1/(n-k)}` for weights
/// indexed by exactly `N_f`.
pub fn fujiwara_bound(f: &MonicPolynomial, w: &SimplexWeights) -> Result<f64> {
    let support = f.support();
    if w.support() != support.as_slice() {
        return Err(Error::InvalidInput(format!(
            "weights are indexed by {:?} but N_f = {:?}",
            w.support(),
            support
        )));
    }
    let n = f.degree();
    Ok(support
        .iter()
        .zip(w.weights())
        .map(|(&k, &lambda)| (f.coeff(k).norm() / lambda).powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max))
}
