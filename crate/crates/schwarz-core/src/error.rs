use alloc::vec::Vec;
use core::fmt;

/// Errors raised by construction, validation, and the spectral kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Dimension 0 is not a matrix.
    InvalidDimension { n: usize },
    /// Ragged or rectangular input where a square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// NaN or infinity in the entries.
    NonFinite,
    /// Two operands of different dimension.
    DimensionMismatch { left: usize, right: usize },
    /// `‖M − M*‖` exceeded the construction tolerance.
    NotHermitian { defect: f64, tolerance: f64 },
    /// Smallest eigenvalue was not strictly positive.
    NotPositiveDefinite { min_eigenvalue: f64 },
    /// `‖U*U − I‖` exceeded the construction tolerance.
    NotUnitary { defect: f64, tolerance: f64 },
    /// Commutation defect `‖B*B − BB*‖` or the simultaneous
    /// diagonalization residual exceeded tolerance.
    NotNormal { defect: f64, tolerance: f64 },
    /// Jacobi sweeps hit the cap with off-diagonal mass still above
    /// threshold.
    EigNonConvergence {
        off_diagonal: f64,
        threshold: f64,
        sweeps: usize,
    },
    /// An operation required an invertible matrix.
    Singular { min_singular_value: f64, tolerance: f64 },
    /// `UD = DU` was required but does not hold numerically.
    CommutationViolated { defect: f64, tolerance: f64 },
    /// The power-average form of the expectation needs `U^k = I`.
    NotRootOfIdentity { defect: f64, order: u32 },
    /// The exponent search for a strict norm contraction ran out of
    /// candidates; carries the norm at each tried exponent.
    NoStrictContraction { norms: Vec<f64> },
    /// An internal algebraic identity failed to hold numerically.
    ConsistencyCheckFailed {
        context: &'static str,
        defect: f64,
        tolerance: f64,
    },
    /// Wrong dimension for an operation defined only at a fixed size.
    UnsupportedDimension { expected: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension { n } => write!(f, "invalid matrix dimension {n}"),
            Error::NotSquare { rows, cols } => {
                write!(f, "expected square input, got a row of length {cols} in a {rows}-row matrix")
            }
            Error::NonFinite => write!(f, "matrix contains NaN or infinite entries"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::NotHermitian { defect, tolerance } => {
                write!(f, "not Hermitian: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")
            }
            Error::NotPositiveDefinite { min_eigenvalue } => {
                write!(f, "not positive definite: smallest eigenvalue {min_eigenvalue:.3e}")
            }
            Error::NotUnitary { defect, tolerance } => {
                write!(f, "not unitary: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")
            }
            Error::NotNormal { defect, tolerance } => {
                write!(f, "not normal: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")
            }
            Error::EigNonConvergence {
                off_diagonal,
                threshold,
                sweeps,
            } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps: off-diagonal {off_diagonal:.3e} > {threshold:.3e}"
            ),
            Error::Singular {
                min_singular_value,
                tolerance,
            } => write!(
                f,
                "matrix is numerically singular: min singular value {min_singular_value:.3e} <= {tolerance:.3e}"
            ),
            Error::CommutationViolated { defect, tolerance } => {
                write!(f, "UD = DU violated: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")
            }
            Error::NotRootOfIdentity { defect, order } => {
                write!(f, "U^{order} differs from I by {defect:.3e}")
            }
            Error::NoStrictContraction { norms } => write!(
                f,
                "no exponent up to {} achieved a strict norm contraction (last norm {:.6})",
                norms.len(),
                norms.last().copied().unwrap_or(f64::NAN)
            ),
            Error::ConsistencyCheckFailed {
                context,
                defect,
                tolerance,
            } => write!(
                f,
                "consistency check `{context}` failed: defect {defect:.3e} exceeds {tolerance:.3e}"
            ),
            Error::UnsupportedDimension { expected, got } => {
                write!(f, "operation defined for dimension {expected}, got {got}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
