//! Normal matrices: validation, eigendecomposition, polar factors.
//!
//! A normal matrix is diagonalized in two stages: first the Hermitian part
//! `H = (B + B*)/2`, then, inside each eigenvalue cluster of `H`, the
//! compression of the skew part `K = (B − B*)/(2i)`. Both stages are plain
//! Hermitian Jacobi solves, so the whole procedure is deterministic.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::eig::jacobi_hermitian;
use crate::error::{Error, Result};
use crate::hermitian::PositiveDefiniteMatrix;
use crate::matrix::{floored, ComplexMatrix};
use crate::unitary::UnitaryMatrix;

/// Tolerance on `‖B*B − BB*‖ / ‖B‖²` at construction.
pub const NORMALITY_TOL: f64 = 1e-10;

/// Tolerance on the diagonalization residual `‖B − VΛV*‖ / ‖B‖`.
pub const EIG_RESIDUAL_TOL: f64 = 1e-9;

/// Relative eigenvalue-gap threshold for clustering the Hermitian part.
pub const CLUSTER_GAP_TOL: f64 = 1e-8;

/// Relative singular threshold below which polar factors are refused.
pub const INVERTIBILITY_TOL: f64 = 1e-10;

/// A validated normal matrix with its eigensystem cached.
#[derive(Clone, Debug)]
pub struct NormalMatrix {
    mat: ComplexMatrix,
    eigenvalues: Vec<Complex64>,
    eigenvectors: ComplexMatrix,
}

/// `‖B*B − BB*‖_F`.
pub fn normality_defect(m: &ComplexMatrix) -> f64 {
    let adj = m.adjoint();
    (&(&adj * m) - &(m * &adj)).frobenius_norm()
}

/// Compression `V* M V` onto the span of the given orthonormal columns.
pub(crate) fn compress(m: &ComplexMatrix, basis: &[Vec<Complex64>]) -> ComplexMatrix {
    let d = basis.len();
    let images: Vec<Vec<Complex64>> = basis.iter().map(|v| m.apply(v)).collect();
    ComplexMatrix::from_fn(d, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (bi, mj) in basis[i].iter().zip(images[j].iter()) {
            acc += bi.conj() * mj;
        }
        acc
    })
}

/// Groups ascending real values by single linkage with the given gap.
/// Returns half-open index ranges into the sorted slice.
pub(crate) fn cluster_ranges(sorted: &[f64], gap: f64) -> Vec<(usize, usize)> {
    let mut ranges = Vec::new();
    let mut start = 0;
    for i in 1..sorted.len() {
        if sorted[i] - sorted[i - 1] > gap {
            ranges.push((start, i));
            start = i;
        }
    }
    ranges.push((start, sorted.len()));
    ranges
}

/// Two-stage eigendecomposition of a numerically normal matrix. Returns the
/// complex eigenvalues and a unitary eigenbasis; the residual `‖BV − VΛ‖` is
/// checked against `EIG_RESIDUAL_TOL · ‖B‖`.
pub(crate) fn normal_eig_impl(m: &ComplexMatrix) -> Result<(Vec<Complex64>, ComplexMatrix)> {
    let n = m.dim();
    let adj = m.adjoint();
    let herm = (&(m + &adj)).scaled(0.5).symmetrized();
    let skew = (&(m - &adj)).scaled_complex(Complex64::new(0.0, -0.5)).symmetrized();

    let h_out = jacobi_hermitian(&herm);
    if !h_out.converged {
        return Err(Error::EigNonConvergence {
            off_diagonal: h_out.off_diagonal,
            threshold: h_out.threshold,
            sweeps: h_out.sweeps,
        });
    }
    let mut vectors = h_out.eigenvectors;
    let h_scale = h_out
        .eigenvalues
        .iter()
        .fold(0.0f64, |a, &l| a.max(l.abs()));
    let gap = floored(CLUSTER_GAP_TOL * h_scale);

    for (lo, hi) in cluster_ranges(&h_out.eigenvalues, gap) {
        if hi - lo < 2 {
            continue;
        }
        let basis: Vec<Vec<Complex64>> = (lo..hi).map(|j| vectors.column(j)).collect();
        let w = compress(&skew, &basis).symmetrized();
        let w_out = jacobi_hermitian(&w);
        if !w_out.converged {
            return Err(Error::EigNonConvergence {
                off_diagonal: w_out.off_diagonal,
                threshold: w_out.threshold,
                sweeps: w_out.sweeps,
            });
        }
        // Rotate the cluster basis by the second-stage eigenvectors.
        let d = hi - lo;
        for row in 0..n {
            let mut new_row = Vec::with_capacity(d);
            for col in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += basis[k][row] * w_out.eigenvectors.get(k, col);
                }
                new_row.push(acc);
            }
            for (col, val) in new_row.into_iter().enumerate() {
                vectors.set(row, lo + col, val);
            }
        }
    }

    // Rayleigh quotients give the eigenvalues including imaginary parts.
    let mut eigenvalues = Vec::with_capacity(n);
    for j in 0..n {
        let v = vectors.column(j);
        let image = m.apply(&v);
        let mut acc = Complex64::new(0.0, 0.0);
        for (vi, wi) in v.iter().zip(image.iter()) {
            acc += vi.conj() * wi;
        }
        eigenvalues.push(acc);
    }

    let lam = ComplexMatrix::diagonal(&eigenvalues);
    let residual = (&(m * &vectors) - &(&vectors * &lam)).frobenius_norm();
    let tolerance = EIG_RESIDUAL_TOL * floored(m.frobenius_norm());
    if residual > tolerance {
        return Err(Error::NotNormal {
            defect: residual,
            tolerance,
        });
    }
    Ok((eigenvalues, vectors))
}

impl NormalMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        m.check_finite()?;
        let defect = normality_defect(&m);
        let scale = m.frobenius_norm();
        let tolerance = NORMALITY_TOL * floored(scale * scale);
        if defect > tolerance {
            return Err(Error::NotNormal { defect, tolerance });
        }
        let (eigenvalues, eigenvectors) = normal_eig_impl(&m)?;
        Ok(NormalMatrix {
            mat: m,
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Complex eigenvalues, ordered to match `eigenvectors()` columns.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// `‖B*B − BB*‖_F` of the wrapped matrix.
    pub fn defect(&self) -> f64 {
        normality_defect(&self.mat)
    }

    /// Commuting polar factors `B = UD = DU` with `U` unitary and `D`
    /// positive definite, built from the eigensystem as `U = V·phase(Λ)·V*`
    /// and `D = V·|Λ|·V*`. Fails when `B` is numerically singular, since a
    /// positive definite `D` then does not exist.
    pub fn polar(&self) -> Result<(UnitaryMatrix, PositiveDefiniteMatrix)> {
        let scale = self
            .eigenvalues
            .iter()
            .fold(0.0f64, |a, z| a.max(z.norm()));
        let min_modulus = self
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, z| a.min(z.norm()));
        let tolerance = INVERTIBILITY_TOL * floored(scale);
        if min_modulus <= tolerance {
            return Err(Error::Singular {
                min_singular_value: min_modulus,
                tolerance,
            });
        }
        let phases: Vec<Complex64> = self.eigenvalues.iter().map(|z| z / z.norm()).collect();
        let moduli: Vec<f64> = self.eigenvalues.iter().map(|z| z.norm()).collect();
        let v = &self.eigenvectors;
        let u = &(v * &ComplexMatrix::diagonal(&phases)) * &v.adjoint();
        let unitary = UnitaryMatrix::new(u)?;
        let positive = PositiveDefiniteMatrix::from_eigensystem(moduli, v.clone())?;
        Ok((unitary, positive))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sort_by_re_im(mut zs: Vec<Complex64>) -> Vec<Complex64> {
        zs.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .expect("finite eigenvalues")
        });
        zs
    }

    #[test]
    fn diagonal_normal() {
        let b = NormalMatrix::new(ComplexMatrix::diagonal(&[c(1.0, 1.0), c(2.0, 0.0)])).unwrap();
        let got = sort_by_re_im(b.eigenvalues().to_vec());
        assert!((got[0] - c(1.0, 1.0)).norm() < 1e-12);
        assert!((got[1] - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rotation_has_imaginary_spectrum() {
        let rot = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let b = NormalMatrix::new(rot).unwrap();
        let got = sort_by_re_im(b.eigenvalues().to_vec());
        assert!((got[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((got[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_nonnormal() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(NormalMatrix::new(m), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn polar_of_negative_scalar() {
        let b = NormalMatrix::new(ComplexMatrix::identity(2).scaled(-2.0)).unwrap();
        let (u, d) = b.polar().unwrap();
        assert!((u.matrix() - &ComplexMatrix::identity(2).scaled(-1.0)).frobenius_norm() < 1e-12);
        assert!((d.matrix() - &ComplexMatrix::identity(2).scaled(2.0)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn polar_of_unitary_is_self() {
        let rot = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let b = NormalMatrix::new(rot.clone()).unwrap();
        let (u, d) = b.polar().unwrap();
        assert!((u.matrix() - &rot).frobenius_norm() < 1e-10);
        assert!((d.matrix() - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-10);
    }

    #[test]
    fn polar_of_diagonal() {
        let b = NormalMatrix::new(ComplexMatrix::diagonal(&[c(0.0, 3.0), c(-4.0, 0.0)])).unwrap();
        let (u, d) = b.polar().unwrap();
        let want_u = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(-1.0, 0.0)]);
        let want_d = ComplexMatrix::diagonal_real(&[3.0, 4.0]);
        assert!((u.matrix() - &want_u).frobenius_norm() < 1e-12);
        assert!((d.matrix() - &want_d).frobenius_norm() < 1e-12);
        // Factors commute and recompose.
        let ud = u.matrix() * d.matrix();
        let du = d.matrix() * u.matrix();
        assert!((&ud - &du).frobenius_norm() < 1e-12);
        assert!((&ud - b.matrix()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn polar_rejects_singular() {
        let b = NormalMatrix::new(ComplexMatrix::diagonal_real(&[0.0, 1.0])).unwrap();
        assert!(matches!(b.polar(), Err(Error::Singular { .. })));
    }

    #[test]
    fn cluster_ranges_split_on_gap() {
        let vals = [1.0, 1.0 + 1e-12, 2.0, 5.0, 5.0 + 1e-12, 5.0 + 2e-12];
        let r = cluster_ranges(&vals, 1e-9);
        assert_eq!(r, alloc::vec![(0, 2), (2, 3), (3, 6)]);
    }
}
