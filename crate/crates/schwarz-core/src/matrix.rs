//! Dense square complex matrices, row-major.
//!
//! Everything in this crate runs on matrices small enough (n ≲ 12) that the
//! simple O(n³) kernels below are the right tool; there is no blocking, no
//! sparsity, and no BLAS.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// Relative floors are taken against `max(scale, NORM_FLOOR)` so that the
/// zero matrix never turns a tolerance into zero.
pub const NORM_FLOOR: f64 = 1e-300;

/// A dense n×n complex matrix with double-precision entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// The zero matrix of dimension `n` (`n ≥ 1`).
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// The identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix entry by entry; `f(i, j)` fills row `i`, column `j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from complex rows, rejecting ragged, empty, or
    /// non-finite input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDimension { n: 0 });
        }
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
        }
        let m = Self::from_fn(n, |i, j| rows[i][j]);
        m.check_finite()?;
        Ok(m)
    }

    /// Builds a matrix from real rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDimension { n: 0 });
        }
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
        }
        let m = Self::from_fn(n, |i, j| Complex64::new(rows[i][j], 0.0));
        m.check_finite()?;
        Ok(m)
    }

    /// A diagonal matrix with the given complex diagonal.
    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self::from_fn(n, |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// A diagonal matrix with the given real diagonal.
    pub fn diagonal_real(diag: &[f64]) -> Self {
        let n = diag.len();
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// The rank-one matrix `u v*`; `u` and `v` must have equal length.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product needs equal lengths");
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Returns an error if any entry is NaN or infinite.
    pub fn check_finite(&self) -> Result<()> {
        for z in &self.data {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).fold(
            Complex64::new(0.0, 0.0),
            |acc, z| acc + z,
        )
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖M − M*‖_F`, the deviation from being Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = self.get(i, j) - self.get(j, i).conj();
                s += d.norm_sqr();
            }
        }
        s.sqrt()
    }

    /// `(M + M*)/2`. The diagonal of the result is exactly real.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.n, |i, j| {
            let z = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
            if i == j {
                Complex64::new(z.re, 0.0)
            } else {
                z
            }
        })
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) * s)
    }

    pub fn scaled_complex(&self, s: Complex64) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) * s)
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n, "vector length must match dimension");
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Reorders columns so column `k` of the result is column `perm[k]` of
    /// `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::from_fn(self.n, |i, j| self.get(i, perm[j]))
    }

    fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix sum");
        ComplexMatrix::from_fn(self.n, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix difference");
        ComplexMatrix::from_fn(self.n, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scaled(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}×{})", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  [")?;
            for j in 0..self.n {
                let z = self.get(i, j);
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:+.6e}{:+.6e}i", z.re, z.im)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// `max(scale, NORM_FLOOR)`; keeps relative tolerances meaningful at zero.
pub(crate) fn floored(scale: f64) -> f64 {
    scale.max(NORM_FLOOR)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_adjoint() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(0.0, 2.0)],
            vec![c(3.0, 0.0), c(-1.0, 0.5)],
        ])
        .unwrap();
        let b = a.adjoint();
        assert_eq!(b.get(0, 1), c(3.0, 0.0));
        assert_eq!(b.get(1, 0), c(0.0, -2.0));
        let p = &a * &ComplexMatrix::identity(2);
        assert_eq!(p, a);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            ComplexMatrix::from_real_rows(&[&[f64::NAN]]),
            Err(Error::NonFinite)
        ));
        assert!(matches!(
            ComplexMatrix::from_rows(&[]),
            Err(Error::InvalidDimension { n: 0 })
        ));
    }

    #[test]
    fn symmetrized_has_real_diagonal() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.5), c(2.0, 1.0)],
            vec![c(0.0, 3.0), c(4.0, -0.25)],
        ])
        .unwrap();
        let h = a.symmetrized();
        assert_eq!(h.get(0, 0).im, 0.0);
        assert_eq!(h.get(1, 1).im, 0.0);
        assert!(h.hermitian_defect() == 0.0);
    }

    #[test]
    fn trace_and_norms() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 2.0), c(3.0, -1.0)]);
        assert_eq!(a.trace(), c(4.0, 1.0));
        let want = (1.0f64 + 4.0 + 9.0 + 1.0).sqrt();
        assert!((a.frobenius_norm() - want).abs() < 1e-15);
        assert!((a.max_abs() - 10.0f64.sqrt()).abs() < 1e-15);
    }
}
