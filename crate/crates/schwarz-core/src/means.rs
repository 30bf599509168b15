//! The matrix geometric mean `A # B` for positive definite matrices.

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermitian::PositiveDefiniteMatrix;
use crate::matrix::ComplexMatrix;

/// Geometric mean `A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}`, evaluated
/// through the cached spectral decomposition of `A`. The inner conjugation
/// and the final product are symmetrized to remove rounding drift before
/// re-validation.
pub fn gmean(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
) -> Result<PositiveDefiniteMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let root = a.sqrt();
    let inv_root = a.inverse_sqrt();
    let inner = (&(inv_root.matrix() * b.matrix()) * inv_root.matrix()).symmetrized();
    let inner_sqrt = PositiveDefiniteMatrix::from_matrix(inner)?.sqrt();
    let product = (&(root.matrix() * inner_sqrt.matrix()) * root.matrix()).symmetrized();
    PositiveDefiniteMatrix::from_matrix(product)
}

/// Scalar determinant of a 2×2 complex matrix (real part; the inputs here
/// are Hermitian so the imaginary part is rounding noise).
fn det2(m: &ComplexMatrix) -> f64 {
    (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).re
}

/// Closed form of the 2×2 geometric mean:
///
/// ```text
/// X # Y = (det X · det Y)^{1/4} / det(Z)^{1/2} · Z,
///           where Z = X/√(det X) + Y/√(det Y).
/// ```
///
/// Only defined for dimension 2; uses scalar determinants throughout.
pub fn gmean_2x2(
    x: &PositiveDefiniteMatrix,
    y: &PositiveDefiniteMatrix,
) -> Result<PositiveDefiniteMatrix> {
    if x.dim() != 2 || y.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            got: if x.dim() != 2 { x.dim() } else { y.dim() },
        });
    }
    let det_x = det2(x.matrix());
    let det_y = det2(y.matrix());
    let z = &x.matrix().scaled(1.0 / det_x.sqrt()) + &y.matrix().scaled(1.0 / det_y.sqrt());
    let coeff = (det_x * det_y).powf(0.25) / det2(&z).sqrt();
    PositiveDefiniteMatrix::from_matrix(z.scaled(coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_pd;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag2(a: f64, b: f64) -> PositiveDefiniteMatrix {
        PositiveDefiniteMatrix::from_matrix(ComplexMatrix::diagonal_real(&[a, b])).unwrap()
    }

    #[test]
    fn mean_with_itself() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_pd(3, 50.0, &mut rng).unwrap();
        let g = gmean(&a, &a).unwrap();
        assert!((g.matrix() - a.matrix()).frobenius_norm() < 1e-12 * a.matrix().frobenius_norm());
    }

    #[test]
    fn mean_with_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_pd(4, 100.0, &mut rng).unwrap();
        let g = gmean(&a, &a.inverse()).unwrap();
        assert!((g.matrix() - &ComplexMatrix::identity(4)).frobenius_norm() < 1e-10);
    }

    #[test]
    fn commuting_case_is_entrywise() {
        let g = gmean(&diag2(1.0, 4.0), &diag2(9.0, 1.0)).unwrap();
        let want = ComplexMatrix::diagonal_real(&[3.0, 2.0]);
        assert!((g.matrix() - &want).frobenius_norm() < 1e-12);
    }

    #[test]
    fn closed_form_on_identity() {
        let id = PositiveDefiniteMatrix::identity(2);
        let g = gmean_2x2(&id, &id).unwrap();
        assert!((g.matrix() - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn closed_form_rejects_other_dimensions() {
        let a = PositiveDefiniteMatrix::identity(3);
        assert!(matches!(
            gmean_2x2(&a, &a),
            Err(Error::UnsupportedDimension { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn closed_form_matches_general_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let a = random_pd(2, 1000.0, &mut rng).unwrap();
            let b = random_pd(2, 1000.0, &mut rng).unwrap();
            let general = gmean(&a, &b).unwrap();
            let closed = gmean_2x2(&a, &b).unwrap();
            let rel = (general.matrix() - closed.matrix()).frobenius_norm()
                / general.matrix().frobenius_norm();
            assert!(rel < 1e-10, "closed form deviates by {rel}");
        }
    }

    #[test]
    fn determinant_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for n in [2usize, 3, 5] {
            let a = random_pd(n, 100.0, &mut rng).unwrap();
            let b = random_pd(n, 100.0, &mut rng).unwrap();
            let g = gmean(&a, &b).unwrap();
            let want = (a.determinant() * b.determinant()).sqrt();
            assert!((g.determinant() - want).abs() < 1e-9 * want);
        }
    }
}
