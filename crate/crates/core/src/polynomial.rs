//! Monic complex polynomials and exact rational exponents.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monic polynomial `s^n + a_{n-1} s^{n-1} + ... + a_1 s + a_0`.
///
/// Coefficients are stored ascending (`a_0` first); the leading 1 is implicit,
/// so `coeffs().len() == degree()`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialJson", into = "PolynomialJson")]
pub struct MonicPolynomial {
    coeffs: Vec<Complex64>,
}

impl MonicPolynomial {
    /// Builds a polynomial from its non-leading coefficients, rejecting
    /// degree zero and non-finite values.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        if let Some(k) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput(format!("coefficient a_{k} is not finite")));
        }
        Ok(Self { coeffs })
    }

    /// Real coefficients, ascending.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&re| Complex64::new(re, 0.0)).collect())
    }

    /// Internal constructor for results of algebra on valid inputs; values may
    /// overflow to infinity for extreme exponents, which the root finder rejects.
    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    /// `s^n`.
    pub fn monomial(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); degree],
        }
    }

    /// `s^n + s^{n-1} + ... + 1`, the identity of the Hadamard product.
    pub fn all_ones(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Self {
            coeffs: vec![Complex64::new(1.0, 0.0); degree],
        }
    }

    /// Expands `prod (s - z_i)`.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        let full = expand_roots(roots);
        Self::new(full[..full.len() - 1].to_vec())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    /// All coefficients including the leading 1, ascending.
    pub fn full_coeffs(&self) -> Vec<Complex64> {
        let mut full = self.coeffs.clone();
        full.push(Complex64::new(1.0, 0.0));
        full
    }

    /// `N_f`: indices of non-leading coefficients that are exactly nonzero.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm()).collect()
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(1.0, 0.0), |acc, &c| acc * z + c)
    }
}

/// Coefficients (ascending, leading included) of `prod (s - z_i)`.
pub(crate) fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut full = vec![Complex64::new(1.0, 0.0)];
    for &z in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); full.len() + 1];
        for (k, &c) in full.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * z;
        }
        full = next;
    }
    full
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialJson {
    degree: usize,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<PolynomialJson> for MonicPolynomial {
    type Error = Error;

    fn try_from(raw: PolynomialJson) -> Result<Self> {
        if raw.coeffs.len() != raw.degree {
            return Err(Error::InvalidInput(format!(
                "degree {} but {} coefficient pairs",
                raw.degree,
                raw.coeffs.len()
            )));
        }
        Self::new(raw.coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }
}

impl From<MonicPolynomial> for PolynomialJson {
    fn from(p: MonicPolynomial) -> Self {
        PolynomialJson {
            degree: p.degree(),
            coeffs: p.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{}", self.degree())?;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let term = match k {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{k}"),
            };
            if c.im == 0.0 {
                write!(f, " + {}{}", c.re, term)?;
            } else {
                write!(f, " + ({}{:+}i){}", c.re, c.im, term)?;
            }
        }
        Ok(())
    }
}

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// An exact rational exponent `num/den` in lowest terms with `den >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    num: i64,
    den: u64,
}

impl RationalExponent {
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let g = (num.unsigned_abs()).gcd(&den).max(1);
        Ok(Self {
            num: num / g as i64,
            den: den / g,
        })
    }

    pub fn integer(k: i64) -> Self {
        Self { num: k, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Greatest common divisor of two nonnegative rationals:
    /// `gcd(a/b, c/d) = gcd(a·d, c·b) / (b·d)`, reduced.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let a = i128::from(self.num).unsigned_abs() * u128::from(other.den);
        let c = i128::from(other.num).unsigned_abs() * u128::from(self.den);
        let den = u128::from(self.den) * u128::from(other.den);
        let g = a.gcd(&c);
        if g == 0 {
            return Ok(Self::integer(0));
        }
        let l = g.gcd(&den);
        let (num, den) = (g / l, den / l);
        match (i64::try_from(num), u64::try_from(den)) {
            (Ok(num), Ok(den)) => Ok(Self { num, den }),
            _ => Err(Error::Unsupported("rational overflow".into())),
        }
    }

    /// `self / other` when the quotient is an integer.
    pub fn integer_ratio(&self, other: &Self) -> Option<i64> {
        let num = i128::from(self.num) * i128::from(other.den);
        let den = i128::from(other.num) * i128::from(self.den);
        if den == 0 || num % den != 0 {
            return None;
        }
        i64::try_from(num / den).ok()
    }
}

impl PartialOrd for RationalExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (i128::from(self.num) * i128::from(other.den)).cmp(&(i128::from(other.num) * i128::from(self.den)))
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for RationalExponent {
    type Err = Error;

    /// Accepts `K/M` or a bare integer `K`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("expected K/M or integer, got {s:?}"));
        match s.trim().split_once('/') {
            Some((k, m)) => {
                let k: i64 = k.trim().parse().map_err(|_| bad())?;
                let m: i64 = m.trim().parse().map_err(|_| bad())?;
                if m == 0 {
                    return Err(bad());
                }
                let (k, m) = if m < 0 { (-k, -m) } else { (k, m) };
                Self::new(k, m as u64)
            }
            None => Ok(Self::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}
