use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Tolerance on `‖U*U − I‖` at construction.
pub const UNITARITY_TOL: f64 = 1e-10;

/// A validated unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    mat: ComplexMatrix,
}

impl UnitaryMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        m.check_finite()?;
        let gram = &m.adjoint() * &m;
        let defect = (&gram - &ComplexMatrix::identity(m.dim())).frobenius_norm();
        if defect > UNITARITY_TOL {
            return Err(Error::NotUnitary {
                defect,
                tolerance: UNITARITY_TOL,
            });
        }
        Ok(UnitaryMatrix { mat: m })
    }

    pub fn identity(n: usize) -> Self {
        UnitaryMatrix {
            mat: ComplexMatrix::identity(n),
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

    /// The inverse `U*`, also unitary.
    pub fn adjoint(&self) -> Self {
        UnitaryMatrix {
            mat: self.mat.adjoint(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn accepts_rotation_rejects_scaling() {
        let rot = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        assert!(UnitaryMatrix::new(rot).is_ok());
        let scaled = ComplexMatrix::diagonal(&[
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        assert!(matches!(
            UnitaryMatrix::new(scaled),
            Err(Error::NotUnitary { .. })
        ));
    }
}
