//! Commensurate fractional-order polynomials and their integer-order reduction.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{MonicPolynomial, RationalExponent};

/// Largest integer degree `to_integer_order` will build.
pub const MAX_REDUCED_DEGREE: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FractionalTerm {
    pub power: RationalExponent,
    pub coeff: Complex64,
}

/// `s^{σ_n} + a_{n-1} s^{σ_{n-1}} + ... + a_0 s^{σ_0}` with exact rational
/// powers, stored in strictly decreasing order of power. The first term is
/// the leading one and has coefficient 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FractionalJson", into = "FractionalJson")]
pub struct FractionalPolynomial {
    terms: Vec<FractionalTerm>,
    commensurate_base: Option<RationalExponent>,
}

impl FractionalPolynomial {
    pub fn new(terms: Vec<FractionalTerm>, commensurate_base: Option<RationalExponent>) -> Result<Self> {
        let Some(lead) = terms.first() else {
            return Err(Error::InvalidInput("fractional polynomial has no terms".into()));
        };
        if lead.coeff != Complex64::new(1.0, 0.0) {
            return Err(Error::InvalidInput("leading coefficient must be 1".into()));
        }
        if lead.power <= RationalExponent::integer(0) {
            return Err(Error::InvalidInput("leading power must be positive".into()));
        }
        for pair in terms.windows(2) {
            if pair[1].power >= pair[0].power {
                return Err(Error::InvalidInput(format!(
                    "powers must be strictly decreasing ({} then {})",
                    pair[0].power, pair[1].power
                )));
            }
        }
        if let Some(t) = terms.iter().find(|t| t.power < RationalExponent::integer(0)) {
            return Err(Error::Unsupported(format!("negative power {}", t.power)));
        }
        if let Some(t) = terms
            .iter()
            .find(|t| !t.coeff.re.is_finite() || !t.coeff.im.is_finite())
        {
            return Err(Error::InvalidInput(format!(
                "coefficient of s^{} is not finite",
                t.power
            )));
        }
        if let Some(base) = commensurate_base {
            if base <= RationalExponent::integer(0) {
                return Err(Error::InvalidInput("commensurate base must be positive".into()));
            }
            if let Some(t) = terms.iter().find(|t| t.power.integer_ratio(&base).is_none()) {
                return Err(Error::InvalidInput(format!(
                    "power {} is not a multiple of the base {base}",
                    t.power
                )));
            }
        }
        Ok(Self {
            terms,
            commensurate_base,
        })
    }

    pub fn terms(&self) -> &[FractionalTerm] {
        &self.terms
    }

    pub fn commensurate_base(&self) -> Option<RationalExponent> {
        self.commensurate_base
    }
}

/// Substitutes `w = s^α` with `α` the largest common rational divisor of the
/// powers, giving the integer-order polynomial `F_f`. `f` is Schur stable
/// exactly when `F_f` is.
pub fn to_integer_order(f: &FractionalPolynomial) -> Result<(RationalExponent, MonicPolynomial)> {
    let mut alpha = RationalExponent::integer(0);
    for t in &f.terms {
        alpha = alpha.gcd(&t.power)?;
    }
    let lead = f.terms[0].power;
    let degree = lead
        .integer_ratio(&alpha)
        .and_then(|d| usize::try_from(d).ok())
        .ok_or_else(|| Error::Unsupported("powers are not commensurate".into()))?;
    if degree > MAX_REDUCED_DEGREE {
        return Err(Error::Unsupported(format!(
            "commensurate base {alpha} gives degree {degree} (max {MAX_REDUCED_DEGREE})"
        )));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree];
    for t in &f.terms[1..] {
        // exact by construction of alpha
        let j = t.power.integer_ratio(&alpha).expect("alpha divides every power") as usize;
        coeffs[j] = t.coeff;
    }
    Ok((alpha, MonicPolynomial::new(coeffs)?))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    pow: (i64, i64),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeff: Option<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FractionalJson {
    terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    commensurate_base: Option<(i64, i64)>,
}

fn rational(num: i64, den: i64) -> Result<RationalExponent> {
    if den <= 0 {
        return Err(Error::InvalidInput(format!(
            "power {num}/{den} needs a positive denominator"
        )));
    }
    RationalExponent::new(num, den as u64)
}

impl TryFrom<FractionalJson> for FractionalPolynomial {
    type Error = Error;

    fn try_from(raw: FractionalJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (i, t) in raw.terms.into_iter().enumerate() {
            let coeff = match (i, t.coeff) {
                (0, None) => Complex64::new(1.0, 0.0),
                (0, Some([re, im])) if re == 1.0 && im == 0.0 => Complex64::new(1.0, 0.0),
                (0, Some(_)) => return Err(Error::InvalidInput("leading coefficient is implicit 1".into())),
                (_, Some([re, im])) => Complex64::new(re, im),
                (_, None) => return Err(Error::InvalidInput(format!("term {i} has no coefficient"))),
            };
            terms.push(FractionalTerm {
                power: rational(t.pow.0, t.pow.1)?,
                coeff,
            });
        }
        let base = raw.commensurate_base.map(|(n, d)| rational(n, d)).transpose()?;
        FractionalPolynomial::new(terms, base)
    }
}

impl From<FractionalPolynomial> for FractionalJson {
    fn from(f: FractionalPolynomial) -> Self {
        FractionalJson {
            terms: f
                .terms
                .iter()
                .enumerate()
                .map(|(i, t)| TermJson {
                    pow: (t.power.num(), t.power.den() as i64),
                    coeff: (i > 0).then_some([t.coeff.re, t.coeff.im]),
                })
                .collect(),
            commensurate_base: f.commensurate_base.map(|b| (b.num(), b.den() as i64)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(num: i64, den: u64, re: f64) -> FractionalTerm {
        FractionalTerm {
            power: RationalExponent::new(num, den).unwrap(),
            coeff: Complex64::new(re, 0.0),
        }
    }

    #[test]
    fn half_integer_powers() {
        let f = FractionalPolynomial::new(vec![term(3, 2, 1.0), term(1, 2, 0.4), term(0, 1, 0.3)], None).unwrap();
        let (alpha, big_f) = to_integer_order(&f).unwrap();
        assert_eq!(alpha, RationalExponent::new(1, 2).unwrap());
        assert_eq!(big_f, MonicPolynomial::from_real(&[0.3, 0.4, 0.0]).unwrap());
    }

    #[test]
    fn integer_powers_are_identity() {
        let f = FractionalPolynomial::new(
            vec![term(5, 1, 1.0), term(2, 1, 0.9), term(1, 1, 0.2), term(0, 1, 0.7)],
            None,
        )
        .unwrap();
        let (alpha, big_f) = to_integer_order(&f).unwrap();
        assert_eq!(alpha, RationalExponent::integer(1));
        assert_eq!(big_f, MonicPolynomial::from_real(&[0.7, 0.2, 0.9, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn base_larger_than_one() {
        // s^4 + 0.5 s^2 -> w^2 + 0.5 with w = s^2
        let f = FractionalPolynomial::new(vec![term(4, 1, 1.0), term(2, 1, 0.5)], None).unwrap();
        let (alpha, big_f) = to_integer_order(&f).unwrap();
        assert_eq!(alpha, RationalExponent::integer(2));
        assert_eq!(big_f, MonicPolynomial::from_real(&[0.0, 0.5]).unwrap());
    }

    #[test]
    fn json_leading_coefficient_implicit() {
        let f: FractionalPolynomial = serde_json::from_str(
            r#"{"terms": [{"pow": [5,2]}, {"pow": [1,1], "coeff": [0.9,0]}, {"pow": [1,2], "coeff": [0.2,0]}, {"pow": [0,1], "coeff": [0.7,0]}]}"#,
        )
        .unwrap();
        let (alpha, big_f) = to_integer_order(&f).unwrap();
        assert_eq!(alpha, RationalExponent::new(1, 2).unwrap());
        assert_eq!(big_f, MonicPolynomial::from_real(&[0.7, 0.2, 0.9, 0.0, 0.0]).unwrap());
        let back: FractionalPolynomial = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn invalid_shapes() {
        assert!(FractionalPolynomial::new(vec![], None).is_err());
        assert!(FractionalPolynomial::new(vec![term(1, 2, 1.0), term(3, 2, 0.1)], None).is_err());
        assert!(FractionalPolynomial::new(vec![term(1, 1, 2.0)], None).is_err());
        assert!(matches!(
            FractionalPolynomial::new(vec![term(1, 1, 1.0), term(-1, 2, 0.3)], None),
            Err(Error::Unsupported(_))
        ));
        let base = Some(RationalExponent::new(1, 3).unwrap());
        assert!(FractionalPolynomial::new(vec![term(3, 2, 1.0), term(0, 1, 0.1)], base).is_err());
        assert!(
            serde_json::from_str::<FractionalPolynomial>(r#"{"terms": [{"pow": [1,2], "coeff": [2,0]}]}"#).is_err()
        );
        assert!(serde_json::from_str::<FractionalPolynomial>(r#"{"terms": [{"pow": [1,0]}]}"#).is_err());
        assert!(
            serde_json::from_str::<FractionalPolynomial>(r#"{"terms": [{"pow": [1,1]}, {"pow": [0,1]}]}"#).is_err()
        );
    }

    #[test]
    fn impractical_base_is_unsupported() {
        let f = FractionalPolynomial::new(vec![term(1, 1, 1.0), term(1, 100_003, 0.1)], None).unwrap();
        assert!(matches!(to_integer_order(&f), Err(Error::Unsupported(_))));
    }
}
