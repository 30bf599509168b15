//! Hermitian and positive definite matrices.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::eig::jacobi_hermitian;
use crate::error::{Error, Result};
use crate::matrix::{floored, ComplexMatrix};

/// Relative tolerance on `‖M − M*‖` at construction; inputs within it are
/// symmetrized exactly.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A validated Hermitian matrix. `M = M*` holds exactly after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    mat: ComplexMatrix,
}

/// Eigenvalues (ascending) and an orthonormal eigenbasis.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix; column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        m.check_finite()?;
        let defect = m.hermitian_defect();
        let tolerance = HERMITIAN_TOL * floored(m.frobenius_norm());
        if defect > tolerance {
            return Err(Error::NotHermitian { defect, tolerance });
        }
        Ok(HermitianMatrix {
            mat: m.symmetrized(),
        })
    }

    /// Wraps a matrix that is Hermitian by construction (still symmetrizes).
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        HermitianMatrix {
            mat: m.symmetrized(),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Full eigendecomposition by cyclic Jacobi. Errors only if the sweep
    /// cap is hit with off-diagonal mass left, carrying the residual.
    pub fn eig(&self) -> Result<HermitianEig> {
        let out = jacobi_hermitian(&self.mat);
        if !out.converged {
            return Err(Error::EigNonConvergence {
                off_diagonal: out.off_diagonal,
                threshold: out.threshold,
                sweeps: out.sweeps,
            });
        }
        Ok(HermitianEig {
            eigenvalues: out.eigenvalues,
            eigenvectors: out.eigenvectors,
        })
    }
}

/// A validated positive definite matrix with its eigendecomposition cached
/// (eigenvalues ascending, orthonormal eigenvectors).
#[derive(Clone, Debug)]
pub struct PositiveDefiniteMatrix {
    mat: ComplexMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl PositiveDefiniteMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let eig = h.eig()?;
        let min = eig.eigenvalues[0];
        if !(min > 0.0) {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min,
            });
        }
        Ok(PositiveDefiniteMatrix {
            mat: h.into_matrix(),
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// Identity of dimension `n`.
    pub fn identity(n: usize) -> Self {
        Self::from_matrix(ComplexMatrix::identity(n)).expect("identity is positive definite")
    }

    /// Rebuilds `Σ λ_i v_i v_i*` from a known eigensystem. The caller
    /// guarantees the columns are orthonormal and every `λ_i > 0`; the pairs
    /// are sorted ascending here.
    pub(crate) fn from_eigensystem(
        eigenvalues: Vec<f64>,
        eigenvectors: ComplexMatrix,
    ) -> Result<Self> {
        let n = eigenvectors.dim();
        assert_eq!(eigenvalues.len(), n);
        for &l in &eigenvalues {
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::NotPositiveDefinite { min_eigenvalue: l });
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            eigenvalues[i]
                .partial_cmp(&eigenvalues[j])
                .expect("eigenvalues are finite")
        });
        let sorted: Vec<f64> = order.iter().map(|&i| eigenvalues[i]).collect();
        let vectors = eigenvectors.permute_columns(&order);
        let lam = ComplexMatrix::diagonal_real(&sorted);
        let mat = (&(&vectors * &lam) * &vectors.adjoint()).symmetrized();
        mat.check_finite()?;
        Ok(PositiveDefiniteMatrix {
            mat,
            eigenvalues: sorted,
            eigenvectors: vectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `λ_max / λ_min`.
    pub fn condition_number(&self) -> f64 {
        self.max_eigenvalue() / self.min_eigenvalue()
    }

    /// Product of eigenvalues.
    pub fn determinant(&self) -> f64 {
        self.eigenvalues.iter().product()
    }

    /// Applies `f` to the spectrum: `V f(Λ) V*`. `f` must map the positive
    /// axis into itself.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        Self::from_eigensystem(mapped, self.eigenvectors.clone())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        self.map_eigenvalues(|l| l.sqrt())
            .expect("square root of a positive spectrum is positive")
    }

    pub fn inverse(&self) -> Self {
        self.map_eigenvalues(|l| 1.0 / l)
            .expect("inverse of a positive spectrum is positive")
    }

    pub fn inverse_sqrt(&self) -> Self {
        self.map_eigenvalues(|l| 1.0 / l.sqrt())
            .expect("inverse square root of a positive spectrum is positive")
    }

    /// Real matrix power `A^t`.
    pub fn powf(&self, t: f64) -> Result<Self> {
        self.map_eigenvalues(|l| l.powf(t))
    }

    /// `U* A U` for unitary `U`: same spectrum, rotated eigenbasis.
    pub fn conjugate_by(&self, u: &crate::unitary::UnitaryMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: u.dim(),
                right: self.dim(),
            });
        }
        let rotated = &u.matrix().adjoint() * &self.eigenvectors;
        Self::from_eigensystem(self.eigenvalues.clone(), rotated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            alloc::vec![c(1.0, 0.0), c(2.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eig_known_diagonal() {
        let h = HermitianMatrix::new(ComplexMatrix::diagonal_real(&[3.0, 1.0])).unwrap();
        let e = h.eig().unwrap();
        assert_eq!(e.eigenvalues, alloc::vec![1.0, 3.0]);
        assert_eq!(e.eigenvectors.get(1, 0), c(1.0, 0.0));
        assert_eq!(e.eigenvectors.get(0, 1), c(1.0, 0.0));
    }

    // Quadratic-formula oracle for the 2×2 matrix (1/25)[[50, 5], [5, 1]]:
    // its characteristic polynomial is λ² − (51/25)λ + 1/25.
    #[test]
    fn eig_matches_characteristic_polynomial_oracle() {
        let x = ComplexMatrix::from_real_rows(&[&[50.0 / 25.0, 5.0 / 25.0], &[
            5.0 / 25.0,
            1.0 / 25.0,
        ]])
        .unwrap();
        let h = HermitianMatrix::new(x).unwrap();
        let e = h.eig().unwrap();

        let tr = 51.0 / 25.0;
        let det = 1.0 / 25.0;
        let disc = (tr * tr - 4.0 * det).sqrt();
        let lo = (tr - disc) / 2.0;
        let hi = (tr + disc) / 2.0;
        assert!((e.eigenvalues[0] - lo).abs() < 1e-14);
        assert!((e.eigenvalues[1] - hi).abs() < 1e-14);
    }

    #[test]
    fn pd_rejects_indefinite() {
        let h = HermitianMatrix::new(ComplexMatrix::diagonal_real(&[2.0, -0.5])).unwrap();
        assert!(matches!(
            PositiveDefiniteMatrix::new(h),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn sqrt_of_diagonal() {
        let a = PositiveDefiniteMatrix::from_matrix(ComplexMatrix::diagonal_real(&[4.0, 9.0]))
            .unwrap();
        let r = a.sqrt();
        assert!((r.matrix().get(0, 0).re - 2.0).abs() < 1e-15);
        assert!((r.matrix().get(1, 1).re - 3.0).abs() < 1e-15);
        assert_eq!(r.matrix().get(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn sqrt_identity_is_identity() {
        let a = PositiveDefiniteMatrix::identity(3);
        let r = a.sqrt();
        assert_eq!(r.matrix(), &ComplexMatrix::identity(3));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = PositiveDefiniteMatrix::from_matrix(
            ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap(),
        )
        .unwrap();
        assert!((a.determinant() - 3.0).abs() < 1e-12);
        let prod = &a.matrix().clone() * a.inverse().matrix();
        assert!((&prod - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-13);
        assert!((a.condition_number() - 3.0).abs() < 1e-12);
    }
}
