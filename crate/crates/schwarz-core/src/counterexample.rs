//! The explicit 2×2 pair violating the three-term inequality, and the
//! constructive pipeline that turns any violated pinching instance into a
//! concrete `(A, B)` pair breaking the norm inequality.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::expectation::{SpectralDecomposition, DEFAULT_CLUSTER_TOL};
use crate::hermitian::{HermitianMatrix, PositiveDefiniteMatrix};
use crate::matrix::ComplexMatrix;
use crate::means::gmean_2x2;
use crate::normal::{compress, NormalMatrix};
use crate::unitary::UnitaryMatrix;

/// Derived quantities of the reference pair, all recomputed from the exact
/// entry constants rather than stored as decimals.
#[derive(Clone, Debug)]
pub struct ReferenceFacts {
    pub det_x: f64,
    pub det_y: f64,
    pub x_squared: ComplexMatrix,
    pub y_squared: ComplexMatrix,
    /// Closed-form 2×2 inverses (scalar adjugate over determinant).
    pub x_inverse: ComplexMatrix,
    pub y_inverse: ComplexMatrix,
    /// `e₁* (X² # Y²) e₁`, equal to `√(101/650)`.
    pub compression: f64,
    /// Smallest eigenvalue of `X² # Y² + X⁻¹ + Y⁻¹`; equals
    /// `2 + √(101/650) < 3`, which is the violation.
    pub sum_min_eigenvalue: f64,
}

fn inverse_2x2(m: &ComplexMatrix) -> ComplexMatrix {
    let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    ComplexMatrix::from_fn(2, |i, j| {
        let adj = match (i, j) {
            (0, 0) => m.get(1, 1),
            (0, 1) => -m.get(0, 1),
            (1, 0) => -m.get(1, 0),
            _ => m.get(0, 0),
        };
        adj / det
    })
}

/// The reference pair
///
/// ```text
/// X = (1/25) [[50, 5], [5, 1]],   Y = (1/25) [[50, -5], [-5, 1]]
/// ```
///
/// with `det X = det Y = 1/25`, together with the derived facts used by the
/// verification driver. The triple `(X², Y⁻², I)` violates the three-term
/// inequality, and its 6×6 cyclic embedding violates the pinched-mean bound.
pub fn reference_counterexample() -> (PositiveDefiniteMatrix, PositiveDefiniteMatrix, ReferenceFacts)
{
    let x_mat = ComplexMatrix::from_real_rows(&[
        &[50.0 / 25.0, 5.0 / 25.0],
        &[5.0 / 25.0, 1.0 / 25.0],
    ])
    .expect("exact constants");
    let y_mat = ComplexMatrix::from_real_rows(&[
        &[50.0 / 25.0, -5.0 / 25.0],
        &[-5.0 / 25.0, 1.0 / 25.0],
    ])
    .expect("exact constants");

    let det_x = (x_mat.get(0, 0) * x_mat.get(1, 1) - x_mat.get(0, 1) * x_mat.get(1, 0)).re;
    let det_y = (y_mat.get(0, 0) * y_mat.get(1, 1) - y_mat.get(0, 1) * y_mat.get(1, 0)).re;

    let x_squared = &x_mat * &x_mat;
    let y_squared = &y_mat * &y_mat;
    let x_inverse = inverse_2x2(&x_mat);
    let y_inverse = inverse_2x2(&y_mat);

    let x2 = PositiveDefiniteMatrix::from_matrix(x_squared.clone()).expect("X² is positive");
    let y2 = PositiveDefiniteMatrix::from_matrix(y_squared.clone()).expect("Y² is positive");
    let mean = gmean_2x2(&x2, &y2).expect("2×2 closed form");
    let compression = mean.matrix().get(0, 0).re;

    let sum = &(mean.matrix() + &x_inverse) + &y_inverse;
    let sum_min_eigenvalue = HermitianMatrix::new_unchecked(sum)
        .eig()
        .expect("2×2 Jacobi converges")
        .eigenvalues[0];

    let x = PositiveDefiniteMatrix::from_matrix(x_mat).expect("X is positive");
    let y = PositiveDefiniteMatrix::from_matrix(y_mat).expect("Y is positive");
    let facts = ReferenceFacts {
        det_x,
        det_y,
        x_squared,
        y_squared,
        x_inverse,
        y_inverse,
        compression,
        sum_min_eigenvalue,
    };
    (x, y, facts)
}

/// Exponent cap for the norm-contraction search. The off-witness blocks of
/// `D^{m/2} M D^{m/2}` decay like `2^{-m/2}`, so convergence is geometric.
pub const MAX_EXPONENT: u32 = 64;

/// A constructed violation of the norm inequality: positive `A` and normal
/// invertible `B` with `‖A # (B* A⁻¹ B)‖ < ‖B‖`.
#[derive(Clone, Debug)]
pub struct CounterexampleConstruction {
    pub a: PositiveDefiniteMatrix,
    pub b: NormalMatrix,
    /// The exponent `m` in `D^m`; reported, not canonical.
    pub exponent: u32,
    /// Index of the spectral cluster the witness vector lives in.
    pub cluster_index: usize,
    /// Unit vector `ξ` with `ξ* M ξ < 1` inside that cluster.
    pub witness: Vec<Complex64>,
    /// `ξ* M ξ`, the globally smallest compression eigenvalue.
    pub compressed_value: f64,
    /// `‖D^{m/2} M D^{m/2}‖` at the accepted exponent; this is the violating
    /// left-hand norm.
    pub achieved_norm: f64,
}

/// Turns a violated pinching instance into an explicit norm-inequality
/// counterexample.
///
/// Writing `M = S # (U* S⁻¹ U)`, the smallest eigenvalue of any cluster
/// compression of `M` below one witnesses the violation. With `e = ξξ*` for
/// the minimizing unit vector and `D = e + (I − e)/2`, the norm of
/// `D^{m/2} M D^{m/2}` tends to `ξ* M ξ < 1`, so some finite `m` makes it
/// strictly less than one. Then `A = D^{m/2} S D^{m/2}` and `B = U D^m`
/// (normal, since `e` commutes with `U`) satisfy
/// `‖A # (B* A⁻¹ B)‖ = ‖D^{m/2} M D^{m/2}‖ < 1 = ‖B‖`.
///
/// Returns `Ok(None)` when the instance is not violated (margin within
/// `violation_tol`), e.g. for every 2×2 input.
pub fn construct_conj1_counterexample(
    s: &PositiveDefiniteMatrix,
    u: &UnitaryMatrix,
    violation_tol: f64,
) -> Result<Option<CounterexampleConstruction>> {
    if s.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: u.dim(),
        });
    }
    let n = s.dim();
    let mean = crate::means::gmean(s, &s.inverse().conjugate_by(u)?)?;
    let decomposition = SpectralDecomposition::new(u, DEFAULT_CLUSTER_TOL)?;

    // Globally smallest compression eigenvalue; ties keep the lowest
    // cluster index.
    let mut best: Option<(usize, f64, Vec<Complex64>)> = None;
    for (index, cluster) in decomposition.clusters().iter().enumerate() {
        let compressed = compress(mean.matrix(), &cluster.basis).symmetrized();
        let eig = HermitianMatrix::new_unchecked(compressed).eig()?;
        let value = eig.eigenvalues[0];
        if best.as_ref().map_or(true, |(_, b, _)| value < *b) {
            // Lift the compression eigenvector back to the full space.
            let mut xi = alloc::vec![Complex64::new(0.0, 0.0); n];
            for (k, basis_vec) in cluster.basis.iter().enumerate() {
                let coeff = eig.eigenvectors.get(k, 0);
                for (slot, component) in xi.iter_mut().zip(basis_vec.iter()) {
                    *slot += coeff * component;
                }
            }
            let norm = xi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in xi.iter_mut() {
                *z /= norm;
            }
            best = Some((index, value, xi));
        }
    }
    let (cluster_index, compressed_value, witness) =
        best.expect("a unitary has at least one spectral cluster");

    if compressed_value >= 1.0 - violation_tol {
        return Ok(None);
    }

    let projector = ComplexMatrix::outer(&witness, &witness);
    let identity = ComplexMatrix::identity(n);
    let mut norms = Vec::new();
    let mut accepted: Option<(u32, f64, ComplexMatrix)> = None;
    for exponent in 1..=MAX_EXPONENT {
        // D^{m/2} = e + 2^{-m/2} (I − e) = t·I + (1−t)·e.
        let t = (-(f64::from(exponent)) / 2.0).exp2();
        let half_power = &identity.scaled(t) + &projector.scaled(1.0 - t);
        let squeezed = (&(&half_power * mean.matrix()) * &half_power).symmetrized();
        let norm = squeezed.operator_norm();
        norms.push(norm);
        if norm < 1.0 - violation_tol {
            accepted = Some((exponent, norm, half_power));
            break;
        }
    }
    let Some((exponent, achieved_norm, half_power)) = accepted else {
        return Err(Error::NoStrictContraction { norms });
    };

    let a_mat = (&(&half_power * s.matrix()) * &half_power).symmetrized();
    let a = PositiveDefiniteMatrix::from_matrix(a_mat)?;
    let t_full = (-f64::from(exponent)).exp2();
    let full_power = &identity.scaled(t_full) + &projector.scaled(1.0 - t_full);
    let b = NormalMatrix::new(u.matrix() * &full_power)?;

    Ok(Some(CounterexampleConstruction {
        a,
        b,
        exponent,
        cluster_index,
        witness,
        compressed_value,
        achieved_norm,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjectures::{check_conj1, check_conj3, check_dagger, embed_cyclic};
    use crate::conjectures::DEFAULT_VIOLATION_TOL;
    use crate::random::{random_pd, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reference_facts_match_closed_forms() {
        let (_, _, facts) = reference_counterexample();
        assert!((facts.det_x - 0.04).abs() < 1e-15);
        assert!((facts.det_y - 0.04).abs() < 1e-15);

        let want_x2 = [[2525.0, 255.0], [255.0, 26.0]];
        for i in 0..2 {
            for j in 0..2 {
                let want = want_x2[i][j] / 625.0;
                assert!((facts.x_squared.get(i, j).re - want).abs() < 1e-12);
            }
        }
        let want_x_inv = [[1.0, -5.0], [-5.0, 50.0]];
        let want_y_inv = [[1.0, 5.0], [5.0, 50.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((facts.x_inverse.get(i, j).re - want_x_inv[i][j]).abs() < 1e-12);
                assert!((facts.y_inverse.get(i, j).re - want_y_inv[i][j]).abs() < 1e-12);
            }
        }

        let want_compression = (101.0f64 / 650.0).sqrt();
        assert!((facts.compression - want_compression).abs() < 1e-12);
        assert!((facts.sum_min_eigenvalue - (2.0 + want_compression)).abs() < 1e-10);
        assert!(facts.sum_min_eigenvalue < 3.0);
    }

    #[test]
    fn reference_triple_violates_dagger() {
        let (x, y, facts) = reference_counterexample();
        let x2 = PositiveDefiniteMatrix::from_matrix(facts.x_squared.clone()).unwrap();
        let y_inv2 = y.inverse().powf(2.0).unwrap();
        let id = PositiveDefiniteMatrix::identity(2);
        let r = check_dagger(&x2, &y_inv2, &id, DEFAULT_VIOLATION_TOL).unwrap();
        assert!(!r.holds);
        let want = 2.0 + (101.0f64 / 650.0).sqrt() - 3.0;
        assert!((r.margin - want).abs() < 1e-10, "margin {}", r.margin);
        drop(x);
    }

    #[test]
    fn two_by_two_instances_are_never_violated() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let s = random_pd(2, 1e4, &mut rng).unwrap();
            let u = random_unitary(2, &mut rng).unwrap();
            let out = construct_conj1_counterexample(&s, &u, DEFAULT_VIOLATION_TOL).unwrap();
            assert!(out.is_none());
        }
    }

    #[test]
    fn embedded_reference_yields_norm_counterexample() {
        let (_, y, facts) = reference_counterexample();
        let x2 = PositiveDefiniteMatrix::from_matrix(facts.x_squared.clone()).unwrap();
        let y_inv2 = y.inverse().powf(2.0).unwrap();
        let id = PositiveDefiniteMatrix::identity(2);
        let (s, u) = embed_cyclic(&x2, &y_inv2, &id).unwrap();

        let pinched = check_conj3(&s, &u, DEFAULT_VIOLATION_TOL).unwrap();
        assert!(!pinched.holds);

        let built = construct_conj1_counterexample(&s, &u, DEFAULT_VIOLATION_TOL)
            .unwrap()
            .expect("violated instance must construct");
        assert!(built.exponent <= MAX_EXPONENT);
        assert!(built.achieved_norm < 1.0 - 1e-3);
        // ‖B‖ = ‖D^m‖ = 1: the witness direction has eigenvalue one.
        assert!((built.b.matrix().operator_norm() - 1.0).abs() < 1e-10);
        let scale = built.b.matrix().frobenius_norm();
        assert!(built.b.defect() <= 1e-9 * scale * scale);

        let verdict = check_conj1(&built.a, built.b.matrix(), DEFAULT_VIOLATION_TOL).unwrap();
        assert!(!verdict.holds, "margin {}", verdict.margin);
        assert!(verdict.margin < -1e-3);
        assert!((verdict.lhs - built.achieved_norm).abs() < 1e-9);
    }
}
