//! Operator norm, spectral radius, and the normaloid predicate.

use num_traits::Float;

use crate::eig::jacobi_hermitian;
use crate::matrix::{floored, ComplexMatrix};

/// Relative step tolerance for the spectral-radius iteration.
pub const SPECTRAL_RADIUS_TOL: f64 = 1e-9;

/// Cap on squaring steps in the spectral-radius iteration.
pub const SPECTRAL_RADIUS_MAX_STEPS: usize = 40;

impl ComplexMatrix {
    /// Largest singular value, `sqrt(λ_max(M*M))`.
    pub fn operator_norm(&self) -> f64 {
        let gram = (&self.adjoint() * self).symmetrized();
        let out = jacobi_hermitian(&gram);
        out.eigenvalues[out.eigenvalues.len() - 1].max(0.0).sqrt()
    }

    /// Smallest singular value, `sqrt(λ_min(M*M))`.
    pub fn min_singular_value(&self) -> f64 {
        let gram = (&self.adjoint() * self).symmetrized();
        let out = jacobi_hermitian(&gram);
        out.eigenvalues[0].max(0.0).sqrt()
    }

    /// Maximum eigenvalue modulus, by repeated squaring with per-step
    /// normalization: with `M_0 = M` and `M_{k+1} = (M_k/‖M_k‖)²`, the
    /// estimate after step k is `Π_j ‖M_j‖^(1/2^j)`. Stops when successive
    /// estimates agree to `SPECTRAL_RADIUS_TOL` relative, or at the step cap.
    /// The sequence decreases from `‖M‖`, so the result never exceeds the
    /// operator norm (up to rounding).
    pub fn spectral_radius(&self) -> f64 {
        let mut b = self.clone();
        let mut log_estimate = 0.0;
        let mut estimate = f64::NAN;
        for k in 0..=SPECTRAL_RADIUS_MAX_STEPS {
            let norm = b.operator_norm();
            if norm <= 0.0 {
                return 0.0;
            }
            log_estimate += norm.ln() / (1u64 << k.min(63)) as f64;
            let next = log_estimate.exp();
            if k > 0 && (next - estimate).abs() <= SPECTRAL_RADIUS_TOL * next.abs() {
                return next;
            }
            estimate = next;
            let scaled = b.scaled(1.0 / norm);
            b = &scaled * &scaled;
        }
        estimate
    }

    /// True when the operator norm and spectral radius agree to `tol`
    /// relative. Normal matrices qualify; a nonzero nilpotent never does.
    pub fn is_normaloid(&self, tol: f64) -> bool {
        let norm = self.operator_norm();
        let radius = self.spectral_radius();
        (norm - radius).abs() <= tol * floored(norm)
    }
}
