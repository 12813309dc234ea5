//! Dense helpers for the companion-matrix fallback and the guardian map.

use std::ops::Neg;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_traits::{One, Zero};

/// Companion matrix of a monic polynomial given by its non-leading
/// coefficients (ascending): ones on the subdiagonal, `-a_k` in the last column.
pub fn companion<T>(coeffs: &[T]) -> DMatrix<T>
where
    T: nalgebra::Scalar + Zero + One + Neg<Output = T> + Copy,
{
    let n = coeffs.len();
    let mut k = DMatrix::from_element(n, n, T::zero());
    for i in 1..n {
        k[(i, i - 1)] = T::one();
    }
    for (i, &a) in coeffs.iter().enumerate() {
        k[(i, n - 1)] = -a;
    }
    k
}

/// Kronecker product `A ⊗ B`.
pub fn kronecker(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

/// Second multiplicative compound `C₂(A)` (the bialternate product `A ⊙ A`):
/// the matrix of 2×2 minors over row pairs `p<q` and column pairs `r<s`.
/// Its eigenvalues are `λ_i λ_j` for `i < j`.
pub fn second_compound(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
    let m = pairs.len();
    DMatrix::from_fn(m, m, |row, col| {
        let (p, q) = pairs[row];
        let (r, s) = pairs[col];
        a[(p, r)] * a[(q, s)] - a[(p, s)] * a[(q, r)]
    })
}

/// Determinant via LU with partial pivoting.
pub fn determinant(a: DMatrix<f64>) -> f64 {
    if a.nrows() == 0 {
        return 1.0;
    }
    a.lu().determinant()
}

/// Eigenvalues of a complex square matrix from its Schur form, or `None`
/// when the QR iteration does not converge.
pub fn complex_eigenvalues(a: DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    let n = a.nrows();
    let schur = Schur::try_new(a, f64::EPSILON, 10_000)?;
    let (_, t) = schur.unpack();
    Some((0..n).map(|i| t[(i, i)]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn companion_layout() {
        let k = companion(&[2.0, -3.0, 0.5]);
        assert_eq!(
            k,
            DMatrix::from_row_slice(3, 3, &[0.0, 0.0, -2.0, 1.0, 0.0, 3.0, 0.0, 1.0, -0.5])
        );
    }

    #[test]
    fn compound_of_diagonal() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 3.0, 5.0]));
        let c = second_compound(&d);
        assert_eq!(c.nrows(), 3);
        assert_relative_eq!(determinant(c), 6.0 * 10.0 * 15.0);
    }

    #[test]
    fn compound_is_multiplicative() {
        let a = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.5, -1.0, 0.3, 4.0, 2.0, 2.0, -1.0]);
        let b = DMatrix::from_row_slice(3, 3, &[0.2, -1.0, 1.0, 3.0, 0.0, 1.0, 1.0, 1.0, 1.0]);
        let lhs = second_compound(&(&a * &b));
        let rhs = second_compound(&a) * second_compound(&b);
        assert!((lhs - rhs).abs().max() < 1e-12);
    }

    #[test]
    fn kronecker_shape() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let k = kronecker(&a, &DMatrix::identity(2, 2));
        assert_eq!(k.nrows(), 4);
        assert_eq!(k[(2, 0)], 3.0);
    }

    #[test]
    fn empty_determinant() {
        assert_eq!(determinant(DMatrix::zeros(0, 0)), 1.0);
    }

    #[test]
    fn eigenvalues_of_companion() {
        let a = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let mut ev = complex_eigenvalues(companion(&a)).unwrap();
        ev.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        assert!((ev[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }
}
