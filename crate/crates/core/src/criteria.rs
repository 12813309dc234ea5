//! Coefficient criteria for Schur stability.
//!
//! The sufficient condition used throughout is: there are positive weights
//! `λ_k` on `N_f` with `Σ λ_k ≤ 1` and `|a_k| < λ_k`. Such weights exist exactly
//! when `Σ_{k∈N_f} |a_k| < 1`; the witness spreads the slack `1 − Σ|a_k|`
//! evenly, so every check here is a sum test plus an explicit witness.

use num_complex::Complex64;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hadamard::{hadamard_product, szego_product};
use crate::polynomial::{binomial, MonicPolynomial};

/// Slack allowed on `Σ λ_k ≤ 1` for rounding in synthesized witnesses.
const SUM_TOLERANCE: f64 = 1e-12;

/// An element of `Λ_f`: weights `λ_k ∈ (0, 1]` on a non-empty index set,
/// summing to at most 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexWeights {
    support: Vec<usize>,
    weights: Vec<f64>,
}

impl SimplexWeights {
    /// Pairs `(k, λ_k)` with strictly increasing `k`.
    pub fn new(pairs: Vec<(usize, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("weights need a non-empty support".into()));
        }
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidInput("weight indices must be strictly increasing".into()));
        }
        if let Some(&(k, l)) = pairs.iter().find(|(_, l)| !(*l > 0.0 && *l <= 1.0)) {
            return Err(Error::InvalidInput(format!("λ_{k} = {l} is outside (0, 1]")));
        }
        let sum: f64 = pairs.iter().map(|(_, l)| l).sum();
        if sum > 1.0 + SUM_TOLERANCE {
            return Err(Error::InvalidInput(format!("weights sum to {sum} > 1")));
        }
        let (support, weights) = pairs.into_iter().unzip();
        Ok(Self { support, weights })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.support.iter().position(|&j| j == k).map(|i| self.weights[i])
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.support.iter().copied().zip(self.weights.iter().copied())
    }

    /// Weights `v_k + (1 − Σv)/d` on `support`, provided `Σ v < 1` and every
    /// resulting weight still strictly exceeds its `v_k` after rounding.
    fn from_slack(support: &[usize], values: &[f64]) -> Option<Self> {
        let total: f64 = values.iter().sum();
        if support.is_empty() || total >= 1.0 {
            return None;
        }
        let share = (1.0 - total) / support.len() as f64;
        let pairs: Vec<(usize, f64)> = support
            .iter()
            .zip(values)
            .map(|(&k, &v)| (k, (v + share).min(1.0)))
            .collect();
        if pairs.iter().zip(values).any(|((_, l), v)| l <= v) {
            return None;
        }
        Self::new(pairs).ok()
    }
}

impl Serialize for SimplexWeights {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.support.len()))?;
        for (k, l) in self.iter() {
            map.serialize_entry(&k.to_string(), &l)?;
        }
        map.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriterionId {
    Fujiwara,
    Necessary,
    ProductA,
    ProductB,
    ProductC,
}

impl CriterionId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionId::Fujiwara => "fujiwara",
            CriterionId::Necessary => "necessary",
            CriterionId::ProductA => "product_a",
            CriterionId::ProductB => "product_b",
            CriterionId::ProductC => "product_c",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionOutcome {
    pub criterion: CriterionId,
    pub satisfied: bool,
    /// Present whenever a sufficient criterion holds on a non-empty support.
    pub witness: Option<SimplexWeights>,
}

impl CriterionOutcome {
    fn new(criterion: CriterionId, satisfied: bool, witness: Option<SimplexWeights>) -> Self {
        Self {
            criterion,
            satisfied,
            witness,
        }
    }

    /// Same outcome with the witness dropped.
    pub fn without_witness(mut self) -> Self {
        self.witness = None;
        self
    }
}

impl Serialize for CriterionOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CriterionOutcome", 3)?;
        s.serialize_field("criterion", self.criterion.as_str())?;
        s.serialize_field("satisfied", &self.satisfied)?;
        s.serialize_field("witness", &self.witness)?;
        s.end()
    }
}

/// The sufficient stability condition `|a_k| < λ_k` on `N_f` for some
/// `{λ_k} ∈ Λ_f`. Vacuously true for `s^n`.
pub fn satisfies_stability_condition(f: &MonicPolynomial) -> CriterionOutcome {
    let support = f.support();
    if support.is_empty() {
        return CriterionOutcome::new(CriterionId::Fujiwara, true, None);
    }
    let moduli: Vec<f64> = support.iter().map(|&k| f.coeff(k).norm()).collect();
    let witness = SimplexWeights::from_slack(&support, &moduli);
    CriterionOutcome::new(CriterionId::Fujiwara, witness.is_some(), witness)
}

/// `s^n − Σ λ_k s^k` for weights summing to `1 + eps`; always has a real
/// root `≥ 1` and hence is never Schur stable.
pub fn sharpness_witness(n: usize, weights: &[(usize, f64)], eps: f64) -> Result<MonicPolynomial> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::InvalidInput(format!("eps = {eps} must be nonnegative")));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    let mut seen = vec![false; n];
    for &(k, lambda) in weights {
        if k >= n || seen[k] {
            return Err(Error::InvalidInput(format!(
                "weight index {k} is out of range or repeated"
            )));
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::InvalidInput(format!("λ_{k} = {lambda} must be positive")));
        }
        seen[k] = true;
        coeffs[k] = Complex64::new(-lambda, 0.0);
    }
    let sum: f64 = weights.iter().map(|(_, l)| l).sum();
    if (sum - (1.0 + eps)).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "weights sum to {sum}, expected {}",
            1.0 + eps
        )));
    }
    MonicPolynomial::new(coeffs)
}

/// `|a_k| < C(n, k)` for every `k`; failure proves instability.
pub fn necessary_condition(f: &MonicPolynomial) -> CriterionOutcome {
    let n = f.degree();
    let satisfied = f.coeffs().iter().enumerate().all(|(k, a)| a.norm() < binomial(n, k));
    CriterionOutcome::new(CriterionId::Necessary, satisfied, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductCriterion {
    /// `f` meets the condition and `|b_k| ≤ 1` on `N_f ∩ N_g`.
    A,
    /// `f` meets the condition and `|b_k| ≤ C(n,k)` on `N_f ∩ N_g`.
    B,
    /// `max(|a_k|, |b_k|) < √λ_k` on `N_f ∩ N_g`.
    C,
}

impl std::str::FromStr for ProductCriterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Self::A),
            "b" | "B" => Ok(Self::B),
            "c" | "C" => Ok(Self::C),
            other => Err(Error::InvalidInput(format!("unknown criterion variant {other:?}"))),
        }
    }
}

fn intersection(f: &MonicPolynomial, g: &MonicPolynomial) -> Vec<usize> {
    let sg = g.support();
    f.support().into_iter().filter(|k| sg.contains(k)).collect()
}

/// Sufficient conditions for the Hadamard / Szegő product of `f` and `g` to
/// meet the stability condition. Variants A and C cover both products,
/// variant B only the Szegő product.
pub fn product_criterion(
    f: &MonicPolynomial,
    g: &MonicPolynomial,
    variant: ProductCriterion,
) -> Result<CriterionOutcome> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    let n = f.degree();
    let common = intersection(f, g);
    let outcome = match variant {
        ProductCriterion::A | ProductCriterion::B => {
            let id = if variant == ProductCriterion::A {
                CriterionId::ProductA
            } else {
                CriterionId::ProductB
            };
            let base = satisfies_stability_condition(f);
            let bounded = common.iter().all(|&k| {
                let cap = if variant == ProductCriterion::A {
                    1.0
                } else {
                    binomial(n, k)
                };
                g.coeff(k).norm() <= cap
            });
            let ok = base.satisfied && bounded;
            CriterionOutcome::new(id, ok, if ok { base.witness } else { None })
        }
        ProductCriterion::C => {
            if common.is_empty() {
                CriterionOutcome::new(CriterionId::ProductC, true, None)
            } else {
                let squares: Vec<f64> = common
                    .iter()
                    .map(|&k| f.coeff(k).norm().max(g.coeff(k).norm()).powi(2))
                    .collect();
                let witness = SimplexWeights::from_slack(&common, &squares);
                CriterionOutcome::new(CriterionId::ProductC, witness.is_some(), witness)
            }
        }
    };
    Ok(outcome)
}

/// The products whose stability a `ProductCriterion` guarantees.
pub fn guaranteed_products(
    f: &MonicPolynomial,
    g: &MonicPolynomial,
    variant: ProductCriterion,
) -> Result<Vec<(&'static str, MonicPolynomial)>> {
    let mut out = Vec::with_capacity(2);
    if variant != ProductCriterion::B {
        out.push(("hadamard", hadamard_product(f, g)?));
    }
    out.push(("szego", szego_product(f, g)?));
    Ok(out)
}

/// A polynomial `g` meeting the stability condition such that both `f∘g`
/// and the Szegő product meet it too:
/// `b_k = λ/(2(1 + |a_k|))` on `N_f` with `λ = 1/(2|N_f|)`, zero elsewhere.
pub fn stabilizing_partner(f: &MonicPolynomial) -> MonicPolynomial {
    let support = f.support();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); f.degree()];
    if !support.is_empty() {
        let lambda = 1.0 / (2.0 * support.len() as f64);
        for &k in &support {
            coeffs[k] = Complex64::new(lambda / (2.0 * (1.0 + f.coeff(k).norm())), 0.0);
        }
    }
    MonicPolynomial::new(coeffs).expect("partner coefficients are finite")
}
