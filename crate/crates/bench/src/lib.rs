//! Fixtures shared by the benchmarks.

use num_complex::Complex64;
use schur_hadamard::MonicPolynomial;

pub fn example1_f() -> MonicPolynomial {
    MonicPolynomial::from_real(&[0.7, 0.2, 0.9, 0.0, 0.0]).expect("valid coefficients")
}

pub fn example1_g() -> MonicPolynomial {
    MonicPolynomial::from_real(&[3.0, 2.0, 2.5, 0.0, 0.0]).expect("valid coefficients")
}

pub fn example2_f() -> MonicPolynomial {
    let c = Complex64::new;
    MonicPolynomial::new(vec![c(0.0, -0.9), c(0.7, 0.0), c(0.0, 0.0), c(0.2, -0.4)]).expect("valid coefficients")
}

/// A dense degree-`n` polynomial with coefficients on a slow spiral,
/// deterministic so timings are comparable between runs.
pub fn spiral(n: usize) -> MonicPolynomial {
    let coeffs = (0..n)
        .map(|k| Complex64::from_polar(0.3 + 0.6 * ((k * 7 % n) as f64) / n as f64, 0.9 * k as f64))
        .collect();
    MonicPolynomial::new(coeffs).expect("valid coefficients")
}
