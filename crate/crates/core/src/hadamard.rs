//! Coefficient-wise (Hadamard) algebra on monic polynomials.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polynomial::{binomial, MonicPolynomial, RationalExponent};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn same_degree(f: &MonicPolynomial, g: &MonicPolynomial) -> Result<()> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    Ok(())
}

/// `(f∘g)(s) = s^n + Σ a_k b_k s^k`.
pub fn hadamard_product(f: &MonicPolynomial, g: &MonicPolynomial) -> Result<MonicPolynomial> {
    same_degree(f, g)?;
    Ok(MonicPolynomial::from_coeffs_unchecked(
        f.coeffs().iter().zip(g.coeffs()).map(|(a, b)| a * b).collect(),
    ))
}

/// The weight polynomial `h` with `h_k = 1 / C(n, k)`.
pub fn szego_weight(n: usize) -> MonicPolynomial {
    assert!(n >= 1, "degree must be at least 1");
    MonicPolynomial::from_coeffs_unchecked((0..n).map(|k| Complex64::new(1.0 / binomial(n, k), 0.0)).collect())
}

/// `f∘g∘h` with `h = szego_weight(n)`.
pub fn szego_product(f: &MonicPolynomial, g: &MonicPolynomial) -> Result<MonicPolynomial> {
    let fg = hadamard_product(f, g)?;
    hadamard_product(&fg, &szego_weight(f.degree()))
}

/// Polynomial with conjugated coefficients.
pub fn conjugate(f: &MonicPolynomial) -> MonicPolynomial {
    MonicPolynomial::from_coeffs_unchecked(f.coeffs().iter().map(|c| c.conj()).collect())
}

/// `f_Re = conj(f) · f` (ordinary product), degree `2n`, forced real.
///
/// Its roots are the roots of `f` together with their conjugates.
pub fn real_form(f: &MonicPolynomial) -> MonicPolynomial {
    let full = f.full_coeffs();
    let conj: Vec<Complex64> = full.iter().map(|c| c.conj()).collect();
    let mut out = vec![ZERO; 2 * full.len() - 1];
    for (i, a) in conj.iter().enumerate() {
        for (j, b) in full.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out.pop();
    MonicPolynomial::from_coeffs_unchecked(out.into_iter().map(|c| Complex64::new(c.re, 0.0)).collect())
}

fn int_pow(a: Complex64, mut exp: i64) -> Complex64 {
    let mut base = if exp < 0 { ONE / a } else { a };
    exp = exp.abs();
    let mut acc = ONE;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// Principal value of `a^p` for real `p`, with `0^p = 0`.
///
/// Integral `p` goes through repeated multiplication so that real inputs stay
/// exactly real; otherwise `|a|^p · cis(p·Arg a)` with `Arg a ∈ (−π, π]`.
pub fn complex_pow(a: Complex64, p: f64) -> Complex64 {
    if a == ZERO {
        return ZERO;
    }
    if p.fract() == 0.0 && p.abs() < 2f64.powi(62) {
        return int_pow(a, p as i64);
    }
    Complex64::from_polar(a.norm().powf(p), p * a.arg())
}

/// Principal branch of `f^[p]` for real `p`.
pub fn principal_power(f: &MonicPolynomial, p: f64) -> MonicPolynomial {
    MonicPolynomial::from_coeffs_unchecked(f.coeffs().iter().map(|&a| complex_pow(a, p)).collect())
}

/// Number of members of `f^[p]`: `m^{|N_f|}`, or `None` on overflow.
pub fn branch_count(f: &MonicPolynomial, p: RationalExponent) -> Option<u64> {
    let support = u32::try_from(f.support().len()).ok()?;
    p.den().checked_pow(support)
}

/// The set of polynomials making up a rational Hadamard power `f^[k/m]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchSet {
    base: MonicPolynomial,
    exponent: RationalExponent,
    members: Vec<MonicPolynomial>,
    branch_index: Vec<Vec<u64>>,
}

impl BranchSet {
    pub fn base(&self) -> &MonicPolynomial {
        &self.base
    }

    pub fn exponent(&self) -> RationalExponent {
        self.exponent
    }

    pub fn members(&self) -> &[MonicPolynomial] {
        &self.members
    }

    /// For each member, the root index `l_k ∈ {0..m-1}` chosen for every `k ∈ N_f`.
    pub fn branch_index(&self) -> &[Vec<u64>] {
        &self.branch_index
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The `l = 0` member for every coefficient.
    pub fn principal(&self) -> &MonicPolynomial {
        &self.members[0]
    }
}

/// `f^[p]`: one polynomial for integer `p`, `m^{|N_f|}` branch polynomials for
/// `p = k/m` with `m > 1`. Zero coefficients stay zero on every branch.
pub fn hadamard_power(f: &MonicPolynomial, p: RationalExponent) -> BranchSet {
    let support = f.support();
    if p.is_integer() {
        let member = MonicPolynomial::from_coeffs_unchecked(
            f.coeffs()
                .iter()
                .map(|&a| if a == ZERO { ZERO } else { int_pow(a, p.num()) })
                .collect(),
        );
        return BranchSet {
            base: f.clone(),
            exponent: p,
            members: vec![member],
            branch_index: vec![vec![0; support.len()]],
        };
    }

    let m = p.den();
    let pf = p.to_f64();
    // (modulus^p, p·α) per supported coefficient.
    let polar: Vec<(f64, f64)> = support
        .iter()
        .map(|&k| {
            let a = f.coeff(k);
            (a.norm().powf(pf), pf * a.arg())
        })
        .collect();

    let count = m.checked_pow(support.len() as u32).expect("branch count overflows u64");
    let mut members = Vec::with_capacity(count as usize);
    let mut branch_index = Vec::with_capacity(count as usize);
    let mut index = vec![0u64; support.len()];
    for _ in 0..count {
        let mut coeffs = vec![ZERO; f.degree()];
        for (slot, &k) in support.iter().enumerate() {
            let (r, theta) = polar[slot];
            coeffs[k] = Complex64::from_polar(r, theta + 2.0 * PI * index[slot] as f64 / m as f64);
        }
        members.push(MonicPolynomial::from_coeffs_unchecked(coeffs));
        branch_index.push(index.clone());
        // mixed-radix increment, first supported index fastest
        for digit in index.iter_mut() {
            *digit += 1;
            if *digit < m {
                break;
            }
            *digit = 0;
        }
    }
    BranchSet {
        base: f.clone(),
        exponent: p,
        members,
        branch_index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ex1_f() -> MonicPolynomial {
        MonicPolynomial::from_real(&[0.7, 0.2, 0.9, 0.0, 0.0]).unwrap()
    }

    fn ex1_g() -> MonicPolynomial {
        MonicPolynomial::from_real(&[3.0, 2.0, 2.5, 0.0, 0.0]).unwrap()
    }

    fn assert_coeffs_close(f: &MonicPolynomial, expected: &[Complex64]) {
        assert_eq!(f.degree(), expected.len());
        for (a, b) in f.coeffs().iter().zip(expected) {
            assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()), "{a} vs {b}");
        }
    }

    #[test]
    fn product_identity_and_annihilator() {
        let f = ex1_f();
        assert_eq!(hadamard_product(&f, &MonicPolynomial::all_ones(5)).unwrap(), f);
        assert_eq!(
            hadamard_product(&f, &MonicPolynomial::monomial(5)).unwrap(),
            MonicPolynomial::monomial(5)
        );
    }

    #[test]
    fn product_of_example_one_inputs() {
        let fg = hadamard_product(&ex1_f(), &ex1_g()).unwrap();
        assert_coeffs_close(&fg, &[c(2.1, 0.0), c(0.4, 0.0), c(2.25, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn product_degree_mismatch() {
        let err = hadamard_product(&ex1_f(), &MonicPolynomial::all_ones(3)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 5, right: 3 });
        assert!(szego_product(&ex1_f(), &MonicPolynomial::all_ones(4)).is_err());
    }

    #[test]
    fn szego_weights() {
        assert_coeffs_close(&szego_weight(2), &[c(1.0, 0.0), c(0.5, 0.0)]);
        assert_eq!(szego_weight(5).coeff(2), c(0.1, 0.0));
        assert_coeffs_close(&szego_weight(1), &[c(1.0, 0.0)]);
    }

    #[test]
    fn szego_products() {
        let ones = MonicPolynomial::all_ones(2);
        assert_eq!(szego_product(&ones, &ones).unwrap(), szego_weight(2));
        let f = MonicPolynomial::from_real(&[1.0, 1.0]).unwrap();
        let g = MonicPolynomial::from_real(&[2.0, 2.0]).unwrap();
        assert_coeffs_close(&szego_product(&f, &g).unwrap(), &[c(2.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn square_roots_of_i() {
        let f = MonicPolynomial::new(vec![c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        let set = hadamard_power(&f, RationalExponent::new(1, 2).unwrap());
        assert_eq!(set.len(), 2);
        let w0 = Complex64::from_polar(1.0, PI / 4.0);
        let w1 = Complex64::from_polar(1.0, 5.0 * PI / 4.0);
        assert_coeffs_close(&set.members()[0], &[c(0.0, 0.0), w0]);
        assert_coeffs_close(&set.members()[1], &[c(0.0, 0.0), w1]);
        assert_eq!(set.branch_index(), &[vec![0], vec![1]]);
        // zero coefficient stays exactly zero
        assert_eq!(set.members()[1].coeff(0), c(0.0, 0.0));
    }

    #[test]
    fn integer_powers() {
        let sq = hadamard_power(&ex1_f(), RationalExponent::integer(2));
        assert_eq!(sq.len(), 1);
        assert_coeffs_close(
            sq.principal(),
            &[c(0.49, 0.0), c(0.04, 0.0), c(0.81, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        let inv = hadamard_power(&ex1_g(), RationalExponent::integer(-1));
        assert_coeffs_close(
            inv.principal(),
            &[c(1.0 / 3.0, 0.0), c(0.5, 0.0), c(0.4, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert!(inv.principal().is_real());
    }

    #[test]
    fn zeroth_power() {
        let f = MonicPolynomial::new(vec![c(0.0, 0.0), c(-2.0, 3.0), c(0.5, 0.0)]).unwrap();
        let z = hadamard_power(&f, RationalExponent::integer(0));
        assert_eq!(z.principal().coeffs(), &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(principal_power(&f, 0.0).coeffs(), z.principal().coeffs());
    }

    #[test]
    fn negative_real_coefficients_stay_real_at_integer_powers() {
        let g = MonicPolynomial::new(vec![c(1.0, -0.5), c(0.0, 0.0), c(2.0, -1.0), c(-1.5, 0.0)]).unwrap();
        for q in -10..=10 {
            let pq = principal_power(&g, q as f64);
            assert_eq!(pq.coeff(3).im, 0.0);
            assert_eq!(pq, hadamard_power(&g, RationalExponent::integer(q)).principal().clone());
        }
    }

    #[test]
    fn branch_count_collapses_zero_coefficients() {
        let f = MonicPolynomial::new(vec![c(0.3, 0.1), c(0.0, 0.0), c(0.0, -2.0), c(0.0, 0.0)]).unwrap();
        let p = RationalExponent::new(2, 3).unwrap();
        let set = hadamard_power(&f, p);
        assert_eq!(set.len(), 9);
        assert_eq!(branch_count(&f, p), Some(9));
        let mut seen: Vec<&Vec<u64>> = set.branch_index().iter().collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn conjugation() {
        let f = MonicPolynomial::new(vec![c(0.0, 3.0), c(1.0, 2.0)]).unwrap();
        let fb = conjugate(&f);
        assert_eq!(fb.coeffs(), &[c(0.0, -3.0), c(1.0, -2.0)]);
        assert_eq!(conjugate(&fb), f);
        let r = ex1_f();
        assert_eq!(conjugate(&r), r);
    }

    #[test]
    fn real_forms() {
        let f = MonicPolynomial::new(vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(real_form(&f).coeffs(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let g = MonicPolynomial::from_real(&[0.5]).unwrap();
        assert_coeffs_close(&real_form(&g), &[c(0.25, 0.0), c(1.0, 0.0)]);
        assert_eq!(real_form(&ex1_f()).degree(), 10);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = MonicPolynomial> {
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0, prop::bool::weighted(0.8)), 1..=max_deg).prop_map(|v| {
            MonicPolynomial::new(
                v.into_iter()
                    .map(|(re, im, keep)| if keep { c(re, im) } else { c(0.0, 0.0) })
                    .collect(),
            )
            .unwrap()
        })
    }

    fn arb_pair() -> impl Strategy<Value = (MonicPolynomial, MonicPolynomial, MonicPolynomial)> {
        (1usize..8).prop_flat_map(|n| {
            let one = prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n)
                .prop_map(|v| MonicPolynomial::new(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap());
            (one.clone(), one.clone(), one)
        })
    }

    proptest! {
        #[test]
        fn product_commutes((f, g, h) in arb_pair()) {
            prop_assert_eq!(hadamard_product(&f, &g).unwrap(), hadamard_product(&g, &f).unwrap());
            prop_assert_eq!(szego_product(&f, &g).unwrap(), szego_product(&g, &f).unwrap());
            let left = hadamard_product(&hadamard_product(&f, &g).unwrap(), &h).unwrap();
            let right = hadamard_product(&f, &hadamard_product(&g, &h).unwrap()).unwrap();
            for (a, b) in left.coeffs().iter().zip(right.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
            }
        }

        #[test]
        fn integer_power_exponent_law(f in arb_poly(7), p in -6i64..6, q in -6i64..6) {
            let lhs = hadamard_power(&f, RationalExponent::integer(p + q));
            let fp = hadamard_power(&f, RationalExponent::integer(p));
            let fq = hadamard_power(&f, RationalExponent::integer(q));
            let rhs = hadamard_product(fp.principal(), fq.principal()).unwrap();
            for (a, b) in lhs.principal().coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300), "{} vs {}", a, b);
            }
        }

        #[test]
        fn branch_moduli_and_count(f in arb_poly(5), k in -5i64..6, m in 1u64..5) {
            let p = RationalExponent::new(k, m).unwrap();
            let set = hadamard_power(&f, p);
            let support = f.support();
            prop_assert_eq!(set.len() as u64, p.den().pow(support.len() as u32));
            for member in set.members() {
                for (j, a) in f.coeffs().iter().enumerate() {
                    let b = member.coeff(j);
                    if support.contains(&j) {
                        let expected = a.norm().powf(p.to_f64());
                        prop_assert!((b.norm() - expected).abs() <= 1e-12 * expected);
                    } else {
                        prop_assert_eq!(b, c(0.0, 0.0));
                    }
                }
            }
        }

        #[test]
        fn real_form_is_real_on_the_real_line(f in arb_poly(6), x in -3.0f64..3.0) {
            let r = real_form(&f);
            prop_assert_eq!(r.eval(c(x, 0.0)).im, 0.0);
        }
    }

    #[test]
    fn principal_power_matches_branch_zero() {
        let f = MonicPolynomial::new(vec![c(-0.9, 0.0), c(0.7, 0.0), c(0.0, 0.0), c(0.2, -0.4)]).unwrap();
        let p = RationalExponent::new(7, 3).unwrap();
        let set = hadamard_power(&f, p);
        let pp = principal_power(&f, p.to_f64());
        for (a, b) in pp.coeffs().iter().zip(set.principal().coeffs()) {
            assert_relative_eq!(a.re, b.re, epsilon = 1e-14);
            assert_relative_eq!(a.im, b.im, epsilon = 1e-14);
        }
    }
}
