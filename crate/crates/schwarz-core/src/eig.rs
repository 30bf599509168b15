//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each pivot (p, q) is annihilated by a unitary plane rotation
//! `R = diag(φ, 1) · G` where φ is the phase of `H[p][q]` and `G` is the
//! classical real rotation for the phase-stripped 2×2 block. The accumulated
//! rotations form the eigenvector matrix. This is accurate and allocation-free
//! per sweep, which is all the ≤ ~12×12 matrices in this crate require.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::matrix::{floored, ComplexMatrix};

/// Stop when the off-diagonal Frobenius mass drops below
/// `OFF_DIAGONAL_REL_TOL · ‖H‖_F`.
pub const OFF_DIAGONAL_REL_TOL: f64 = 1e-13;

/// Hard cap on cyclic sweeps.
pub const MAX_SWEEPS: usize = 100;

pub(crate) struct JacobiOutcome {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
    pub converged: bool,
    /// Off-diagonal Frobenius norm at exit.
    pub off_diagonal: f64,
    pub threshold: f64,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Runs cyclic Jacobi on a Hermitian matrix. The input is trusted to be
/// Hermitian (callers symmetrize first); only the real part of the diagonal
/// is used.
pub(crate) fn jacobi_hermitian(h: &ComplexMatrix) -> JacobiOutcome {
    let n = h.dim();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let threshold = floored(OFF_DIAGONAL_REL_TOL * a.frobenius_norm());

    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off > threshold && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let h_pq = a.get(p, q);
                let mag = h_pq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = h_pq / mag;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;

                // Real rotation zeroing the phase-stripped pivot.
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau.abs() > 1e153 {
                    1.0 / (2.0 * tau)
                } else {
                    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                    sign / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Columns p, q of R = diag(phase, 1) · [[c, s], [-s, c]].
                let rpp = phase * c;
                let rpq = phase * s;

                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    let new_ip = aip * rpp - aiq * s;
                    let new_iq = aip * rpq + aiq * c;
                    a.set(i, p, new_ip);
                    a.set(i, q, new_iq);
                    a.set(p, i, new_ip.conj());
                    a.set(q, i, new_iq.conj());
                }
                a.set(p, p, Complex64::new(app - t * mag, 0.0));
                a.set(q, q, Complex64::new(aqq + t * mag, 0.0));
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));

                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * rpp - viq * s);
                    v.set(i, q, vip * rpq + viq * c);
                }
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    // Sort ascending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let eigenvectors = v.permute_columns(&order);

    JacobiOutcome {
        eigenvalues,
        eigenvectors,
        converged: off <= threshold,
        off_diagonal: off,
        threshold,
        sweeps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstruct(result: &JacobiOutcome) -> ComplexMatrix {
        let v = &result.eigenvectors;
        let lam = ComplexMatrix::diagonal_real(&result.eigenvalues);
        &(v * &lam) * &v.adjoint()
    }

    #[test]
    fn diagonal_is_immediate() {
        let h = ComplexMatrix::diagonal_real(&[3.0, 1.0]);
        let r = jacobi_hermitian(&h);
        assert!(r.converged);
        assert_eq!(r.sweeps, 0);
        assert_eq!(r.eigenvalues, alloc::vec![1.0, 3.0]);
        // Ascending order swaps the basis columns.
        assert_eq!(r.eigenvectors.get(0, 1), c(1.0, 0.0));
        assert_eq!(r.eigenvectors.get(1, 0), c(1.0, 0.0));
    }

    #[test]
    fn symmetric_flip() {
        let h = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let r = jacobi_hermitian(&h);
        assert!(r.converged);
        assert!((r.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((r.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = ComplexMatrix::from_rows(&[
            alloc::vec![c(2.0, 0.0), c(1.0, -1.0), c(0.5, 0.25)],
            alloc::vec![c(1.0, 1.0), c(-1.0, 0.0), c(0.0, 2.0)],
            alloc::vec![c(0.5, -0.25), c(0.0, -2.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let r = jacobi_hermitian(&h);
        assert!(r.converged, "off {} vs {}", r.off_diagonal, r.threshold);
        let back = reconstruct(&r);
        assert!((&back - &h).frobenius_norm() < 1e-12 * h.frobenius_norm());
        let gram = &r.eigenvectors.adjoint() * &r.eigenvectors;
        assert!((&gram - &ComplexMatrix::identity(3)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn zero_matrix() {
        let r = jacobi_hermitian(&ComplexMatrix::zeros(3));
        assert!(r.converged);
        assert_eq!(r.eigenvalues, alloc::vec![0.0, 0.0, 0.0]);
    }
}
