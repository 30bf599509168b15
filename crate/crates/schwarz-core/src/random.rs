//! Seeded random instances: Haar unitaries, positive definite matrices with
//! a condition cap, and normal matrices.
//!
//! All generators take the RNG as an explicit parameter so a trial is fully
//! determined by its seed.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::hermitian::{HermitianMatrix, PositiveDefiniteMatrix};
use crate::matrix::ComplexMatrix;
use crate::normal::NormalMatrix;
use crate::unitary::UnitaryMatrix;

/// One draw from the standard complex Gaussian (variance 1/2 per component).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// A matrix of iid standard complex Gaussians (complex Ginibre ensemble).
pub fn gaussian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| complex_gaussian(rng))
}

/// A Gaussian Hermitian matrix `(G + G*)/2`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let g = gaussian_matrix(n, rng);
    HermitianMatrix::new(g.symmetrized()).expect("symmetrized Gaussian is Hermitian")
}

/// Haar-distributed unitary: Gram-Schmidt orthonormalization of a complex
/// Ginibre matrix, normalizing each pivot with a positive real scale (the
/// sign convention that makes the QR factor Haar).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<UnitaryMatrix> {
    loop {
        let g = gaussian_matrix(n, rng);
        if let Some(q) = orthonormalize(&g) {
            return UnitaryMatrix::new(q);
        }
        // Degenerate draw (essentially impossible); try again.
    }
}

fn orthonormalize(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
    for j in 0..n {
        for k in 0..j {
            let mut proj = Complex64::new(0.0, 0.0);
            for i in 0..n {
                proj += cols[k][i].conj() * cols[j][i];
            }
            for i in 0..n {
                let delta = proj * cols[k][i];
                cols[j][i] -= delta;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    Some(ComplexMatrix::from_fn(n, |i, j| cols[j][i]))
}

/// Positive definite matrix `Q Λ Q*` with Haar `Q` and eigenvalues sampled
/// log-uniformly on `[1/√cap, √cap]`, so the condition number never exceeds
/// `cap`.
pub fn random_pd<R: Rng + ?Sized>(
    n: usize,
    condition_cap: f64,
    rng: &mut R,
) -> Result<PositiveDefiniteMatrix> {
    assert!(condition_cap >= 1.0, "condition cap must be at least 1");
    let q = random_unitary(n, rng)?;
    let half_log = condition_cap.ln() / 2.0;
    let eigenvalues: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.random::<f64>() * 2.0 - 1.0;
            (u * half_log).exp()
        })
        .collect();
    PositiveDefiniteMatrix::from_eigensystem(eigenvalues, q.into_matrix())
}

/// Normal matrix `Q diag(z) Q*` with Haar `Q` and iid complex Gaussian `z`.
pub fn random_normal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<NormalMatrix> {
    let q = random_unitary(n, rng)?;
    let diag: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
    let qm = q.matrix();
    let b = &(qm * &ComplexMatrix::diagonal(&diag)) * &qm.adjoint();
    NormalMatrix::new(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pd_respects_condition_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_pd(4, 100.0, &mut rng).unwrap();
        assert!(a.min_eigenvalue() > 0.0);
        // Re-derive the spectrum from the matrix itself rather than trusting
        // the cached values.
        let eig = HermitianMatrix::new(a.matrix().clone()).unwrap().eig().unwrap();
        let cond = eig.eigenvalues[3] / eig.eigenvalues[0];
        assert!(cond <= 100.0 * (1.0 + 1e-9), "cond = {cond}");
        assert!(eig.eigenvalues[0] > 0.0);
    }

    #[test]
    fn unitary_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(3, &mut rng).unwrap();
        let gram = &u.matrix().adjoint() * u.matrix();
        assert!((&gram - &ComplexMatrix::identity(3)).frobenius_norm() <= 1e-10);
    }

    #[test]
    fn normal_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = random_normal(3, &mut rng).unwrap();
        let scale = b.matrix().frobenius_norm();
        assert!(b.defect() <= 1e-10 * scale * scale);
    }

    #[test]
    fn seeded_draws_are_reproducible() {
        let a = random_pd(3, 50.0, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = random_pd(3, 50.0, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    // Construct a normal matrix with known spectrum and recover it.
    #[test]
    fn normal_eig_recovers_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2usize, 3, 5] {
            let q = random_unitary(n, &mut rng).unwrap();
            let spectrum: Vec<Complex64> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
            let qm = q.matrix();
            let b = &(qm * &ComplexMatrix::diagonal(&spectrum)) * &qm.adjoint();
            let normal = NormalMatrix::new(b).unwrap();
            let mut got = normal.eigenvalues().to_vec();
            // Greedy multiset match.
            for want in &spectrum {
                let (idx, dist) = got
                    .iter()
                    .enumerate()
                    .map(|(i, z)| (i, (z - want).norm()))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                assert!(dist < 1e-8, "eigenvalue {want} missed by {dist}");
                got.swap_remove(idx);
            }
        }
    }
}
