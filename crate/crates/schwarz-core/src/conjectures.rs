//! Numerical checkers for the operator-inequality family.
//!
//! Every checker produces a [`CheckReport`]: the two compared scalars, the
//! margin, a verdict at the requested tolerance, condition numbers of the
//! positive definite inputs, and a digest of the instance. Norm checks use
//! `margin = lhs − rhs` with both sides operator norms; order checks report
//! the minimum eigenvalue of the difference against the scalar bound, which
//! amounts to the same `lhs − rhs` convention.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expectation::{expect_u, DEFAULT_CLUSTER_TOL};
use crate::hermitian::{HermitianMatrix, PositiveDefiniteMatrix};
use crate::matrix::{floored, ComplexMatrix};
use crate::means::gmean;
use crate::normal::normality_defect;
use crate::unitary::UnitaryMatrix;

mod digest;

/// Default verdict tolerance, relative to the scale of the bound.
pub const DEFAULT_VIOLATION_TOL: f64 = 1e-8;

/// Relative singular-value threshold under which an input is rejected as
/// non-invertible.
pub const SINGULARITY_TOL: f64 = 1e-10;

/// Tolerance used for the normaloid flag.
pub const NORMALOID_FLAG_TOL: f64 = 1e-8;

/// Which inequality a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ConjectureId {
    /// `‖A # (B* A⁻¹ B)‖ ≥ ‖B‖` for positive invertible `A`, invertible `B`.
    C1,
    /// `‖A^{1/2} (B* A⁻¹ B)^{1/2}‖ ≥ ‖B‖`, valid for normaloid `B`.
    #[cfg_attr(feature = "serde", serde(rename = "C1_HALFPOWER"))]
    C1Halfpower,
    /// `‖D^{1/2} · S # (U* S⁻¹ U) · D^{1/2}‖ ≥ ‖D‖` with `UD = DU`.
    C2,
    /// `E_U(S # (U* S⁻¹ U)) ≥ I`.
    C3,
    /// `A # B⁻¹ + B # C⁻¹ + C # A⁻¹ ≥ 3I`.
    #[cfg_attr(feature = "serde", serde(rename = "DAGGER"))]
    Dagger,
    /// `((A+B+C)/3) # ((A⁻¹+B⁻¹+C⁻¹)/3) ≥ I`.
    #[cfg_attr(feature = "serde", serde(rename = "DDAGGER"))]
    Ddagger,
    /// `(1/n) Tr(E_U(S # (U* S⁻¹ U))) ≥ 1`.
    #[cfg_attr(feature = "serde", serde(rename = "TRACE_I"))]
    TraceI,
    /// `(1/n) Tr(A # B⁻¹ + B # C⁻¹ + C # A⁻¹) ≥ 3`.
    #[cfg_attr(feature = "serde", serde(rename = "TRACE_II"))]
    TraceII,
    /// `A # B⁻¹ + B # A⁻¹ ≥ 2I`.
    #[cfg_attr(feature = "serde", serde(rename = "TWO_TERM"))]
    TwoTerm,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 9] = [
        ConjectureId::C1,
        ConjectureId::C1Halfpower,
        ConjectureId::C2,
        ConjectureId::C3,
        ConjectureId::Dagger,
        ConjectureId::Ddagger,
        ConjectureId::TraceI,
        ConjectureId::TraceII,
        ConjectureId::TwoTerm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConjectureId::C1 => "C1",
            ConjectureId::C1Halfpower => "C1_HALFPOWER",
            ConjectureId::C2 => "C2",
            ConjectureId::C3 => "C3",
            ConjectureId::Dagger => "DAGGER",
            ConjectureId::Ddagger => "DDAGGER",
            ConjectureId::TraceI => "TRACE_I",
            ConjectureId::TraceII => "TRACE_II",
            ConjectureId::TwoTerm => "TWO_TERM",
        }
    }
}

impl core::fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for ConjectureId {
    type Err = ();
    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        ConjectureId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or(())
    }
}

/// Outcome of one inequality evaluation.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckReport {
    pub conjecture_id: ConjectureId,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`; for order checks this is the minimum eigenvalue of the
    /// matrix difference.
    pub margin: f64,
    /// `margin ≥ −tol · rhs`.
    pub holds: bool,
    pub condition_numbers: Vec<f64>,
    pub instance_digest: String,
    /// Extra recorded facts (e.g. whether a general `B` was numerically
    /// normal); empty for most checks.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "BTreeMap::is_empty")
    )]
    pub flags: BTreeMap<String, bool>,
}

fn report(
    conjecture_id: ConjectureId,
    lhs: f64,
    rhs: f64,
    violation_tol: f64,
    condition_numbers: Vec<f64>,
    instance_digest: String,
) -> CheckReport {
    let margin = lhs - rhs;
    CheckReport {
        conjecture_id,
        lhs,
        rhs,
        margin,
        holds: margin >= -violation_tol * floored(rhs.abs()),
        condition_numbers,
        instance_digest,
        flags: BTreeMap::new(),
    }
}

fn min_eigenvalue(h: ComplexMatrix) -> Result<f64> {
    Ok(HermitianMatrix::new_unchecked(h).eig()?.eigenvalues[0])
}

fn require_same_dim(dims: &[usize]) -> Result<()> {
    for w in dims.windows(2) {
        if w[0] != w[1] {
            return Err(Error::DimensionMismatch {
                left: w[0],
                right: w[1],
            });
        }
    }
    Ok(())
}

fn require_invertible(b: &ComplexMatrix) -> Result<f64> {
    let norm = b.operator_norm();
    let min_sv = b.min_singular_value();
    let tolerance = SINGULARITY_TOL * floored(norm);
    if min_sv <= tolerance {
        return Err(Error::Singular {
            min_singular_value: min_sv,
            tolerance,
        });
    }
    Ok(norm)
}

/// `B* A⁻¹ B` as a validated positive definite matrix.
fn sandwich_inverse(a: &PositiveDefiniteMatrix, b: &ComplexMatrix) -> Result<PositiveDefiniteMatrix> {
    let m = (&(&b.adjoint() * a.inverse().matrix()) * b).symmetrized();
    PositiveDefiniteMatrix::from_matrix(m)
}

fn is_numerically_normal(b: &ComplexMatrix) -> bool {
    let scale = b.frobenius_norm();
    normality_defect(b) <= crate::normal::NORMALITY_TOL * floored(scale * scale)
}

/// `‖A # (B* A⁻¹ B)‖ ≥ ‖B‖`. Accepts any invertible `B` and records in the
/// flags whether it was numerically normal.
pub fn check_conj1(
    a: &PositiveDefiniteMatrix,
    b: &ComplexMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    require_same_dim(&[a.dim(), b.dim()])?;
    b.check_finite()?;
    let rhs = require_invertible(b)?;
    let sandwich = sandwich_inverse(a, b)?;
    let lhs = gmean(a, &sandwich)?.max_eigenvalue();
    let digest = digest::instance_digest("C1", &[("A", a.matrix()), ("B", b)]);
    let mut out = report(
        ConjectureId::C1,
        lhs,
        rhs,
        violation_tol,
        alloc::vec![a.condition_number(), sandwich.condition_number()],
        digest,
    );
    out.flags
        .insert(String::from("b_is_normal"), is_numerically_normal(b));
    Ok(out)
}

/// `‖A^{1/2} (B* A⁻¹ B)^{1/2}‖ ≥ ‖B‖`. No verdict is asserted when `B` is
/// not normaloid; the flag records the predicate either way.
pub fn check_halfpower(
    a: &PositiveDefiniteMatrix,
    b: &ComplexMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    require_same_dim(&[a.dim(), b.dim()])?;
    b.check_finite()?;
    let rhs = require_invertible(b)?;
    let sandwich = sandwich_inverse(a, b)?;
    let lhs = (a.sqrt().matrix() * sandwich.sqrt().matrix()).operator_norm();
    let digest = digest::instance_digest("C1_HALFPOWER", &[("A", a.matrix()), ("B", b)]);
    let mut out = report(
        ConjectureId::C1Halfpower,
        lhs,
        rhs,
        violation_tol,
        alloc::vec![a.condition_number(), sandwich.condition_number()],
        digest,
    );
    out.flags.insert(
        String::from("b_is_normaloid"),
        b.is_normaloid(NORMALOID_FLAG_TOL),
    );
    out.flags
        .insert(String::from("b_is_normal"), is_numerically_normal(b));
    Ok(out)
}

/// Commutation tolerance for the `(S, U, D)` check.
pub const COMMUTATION_TOL: f64 = 1e-9;

/// `‖D^{1/2} · S # (U* S⁻¹ U) · D^{1/2}‖ ≥ ‖D‖` for `D` commuting with `U`.
pub fn check_conj2(
    s: &PositiveDefiniteMatrix,
    u: &UnitaryMatrix,
    d: &PositiveDefiniteMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    require_same_dim(&[s.dim(), u.dim(), d.dim()])?;
    let commutator = (&(u.matrix() * d.matrix()) - &(d.matrix() * u.matrix())).frobenius_norm();
    let tolerance = COMMUTATION_TOL * floored(d.matrix().frobenius_norm());
    if commutator > tolerance {
        return Err(Error::CommutationViolated {
            defect: commutator,
            tolerance,
        });
    }
    let mean = gmean(s, &s.inverse().conjugate_by(u)?)?;
    let half = d.sqrt();
    let conjugated = (&(half.matrix() * mean.matrix()) * half.matrix()).symmetrized();
    let lhs = conjugated.operator_norm();
    let rhs = d.max_eigenvalue();
    let digest = digest::instance_digest(
        "C2",
        &[("S", s.matrix()), ("U", u.matrix()), ("D", d.matrix())],
    );
    Ok(report(
        ConjectureId::C2,
        lhs,
        rhs,
        violation_tol,
        alloc::vec![s.condition_number(), d.condition_number()],
        digest,
    ))
}

/// `E_U(S # (U* S⁻¹ U)) ≥ I`; the margin is the smallest eigenvalue of the
/// pinched mean minus one.
pub fn check_conj3(
    s: &PositiveDefiniteMatrix,
    u: &UnitaryMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    require_same_dim(&[s.dim(), u.dim()])?;
    let mean = gmean(s, &s.inverse().conjugate_by(u)?)?;
    let pinched = expect_u(u, mean.matrix(), DEFAULT_CLUSTER_TOL)?;
    let lhs = min_eigenvalue(pinched)?;
    let digest = digest::instance_digest("C3", &[("S", s.matrix()), ("U", u.matrix())]);
    Ok(report(
        ConjectureId::C3,
        lhs,
        1.0,
        violation_tol,
        alloc::vec![s.condition_number()],
        digest,
    ))
}

fn three_term_sum(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    c: &PositiveDefiniteMatrix,
) -> Result<ComplexMatrix> {
    require_same_dim(&[a.dim(), b.dim(), c.dim()])?;
    let ab = gmean(a, &b.inverse())?;
    let bc = gmean(b, &c.inverse())?;
    let ca = gmean(c, &a.inverse())?;
    Ok(&(ab.matrix() + bc.matrix()) + ca.matrix())
}

/// `A # B⁻¹ + B # C⁻¹ + C # A⁻¹ ≥ 3I`.
pub fn check_dagger(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    c: &PositiveDefiniteMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    let sum = three_term_sum(a, b, c)?;
    let lhs = min_eigenvalue(sum)?;
    let digest = digest::instance_digest(
        "DAGGER",
        &[("A", a.matrix()), ("B", b.matrix()), ("C", c.matrix())],
    );
    Ok(report(
        ConjectureId::Dagger,
        lhs,
        3.0,
        violation_tol,
        alloc::vec![
            a.condition_number(),
            b.condition_number(),
            c.condition_number()
        ],
        digest,
    ))
}

/// `((A+B+C)/3) # ((A⁻¹+B⁻¹+C⁻¹)/3) ≥ I`.
pub fn check_ddagger(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    c: &PositiveDefiniteMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    require_same_dim(&[a.dim(), b.dim(), c.dim()])?;
    let mean_of = |x: &ComplexMatrix, y: &ComplexMatrix, z: &ComplexMatrix| {
        PositiveDefiniteMatrix::from_matrix((&(x + y) + z).scaled(1.0 / 3.0))
    };
    let avg = mean_of(a.matrix(), b.matrix(), c.matrix())?;
    let avg_inv = mean_of(
        a.inverse().matrix(),
        b.inverse().matrix(),
        c.inverse().matrix(),
    )?;
    let lhs = gmean(&avg, &avg_inv)?.min_eigenvalue();
    let digest = digest::instance_digest(
        "DDAGGER",
        &[("A", a.matrix()), ("B", b.matrix()), ("C", c.matrix())],
    );
    Ok(report(
        ConjectureId::Ddagger,
        lhs,
        1.0,
        violation_tol,
        alloc::vec![
            a.condition_number(),
            b.condition_number(),
            c.condition_number()
        ],
        digest,
    ))
}

/// `(1/n) Tr(E_U(S # (U* S⁻¹ U))) ≥ 1`.
pub fn check_trace_i(
    s: &PositiveDefiniteMatrix,
    u: &UnitaryMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    require_same_dim(&[s.dim(), u.dim()])?;
    let mean = gmean(s, &s.inverse().conjugate_by(u)?)?;
    let pinched = expect_u(u, mean.matrix(), DEFAULT_CLUSTER_TOL)?;
    let lhs = pinched.trace().re / s.dim() as f64;
    let digest = digest::instance_digest("TRACE_I", &[("S", s.matrix()), ("U", u.matrix())]);
    Ok(report(
        ConjectureId::TraceI,
        lhs,
        1.0,
        violation_tol,
        alloc::vec![s.condition_number()],
        digest,
    ))
}

/// `(1/n) Tr(A # B⁻¹ + B # C⁻¹ + C # A⁻¹) ≥ 3`.
pub fn check_trace_ii(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    c: &PositiveDefiniteMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    let sum = three_term_sum(a, b, c)?;
    let lhs = sum.trace().re / a.dim() as f64;
    let digest = digest::instance_digest(
        "TRACE_II",
        &[("A", a.matrix()), ("B", b.matrix()), ("C", c.matrix())],
    );
    Ok(report(
        ConjectureId::TraceII,
        lhs,
        3.0,
        violation_tol,
        alloc::vec![
            a.condition_number(),
            b.condition_number(),
            c.condition_number()
        ],
        digest,
    ))
}

/// Tolerance for the internal identity `B # A⁻¹ = (A # B⁻¹)⁻¹`.
pub const TWO_TERM_IDENTITY_TOL: f64 = 1e-9;

/// `A # B⁻¹ + B # A⁻¹ ≥ 2I`, with the two terms cross-checked to be exact
/// inverses of each other.
pub fn check_two_term(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    violation_tol: f64,
) -> Result<CheckReport> {
    require_same_dim(&[a.dim(), b.dim()])?;
    let forward = gmean(a, &b.inverse())?;
    let backward = gmean(b, &a.inverse())?;
    let inv = forward.inverse();
    let defect = (backward.matrix() - inv.matrix()).frobenius_norm();
    let tolerance = TWO_TERM_IDENTITY_TOL * floored(inv.matrix().frobenius_norm());
    if defect > tolerance {
        return Err(Error::ConsistencyCheckFailed {
            context: "two-term inverse identity",
            defect,
            tolerance,
        });
    }
    let lhs = min_eigenvalue(forward.matrix() + backward.matrix())?;
    let digest = digest::instance_digest("TWO_TERM", &[("A", a.matrix()), ("B", b.matrix())]);
    Ok(report(
        ConjectureId::TwoTerm,
        lhs,
        2.0,
        violation_tol,
        alloc::vec![a.condition_number(), b.condition_number()],
        digest,
    ))
}

/// Tolerance for the block identity of the cyclic embedding.
pub const EMBED_BLOCK_TOL: f64 = 1e-9;

/// Embeds a positive triple into `M_{3n}`: `S = diag(A, B, C)` and `U` the
/// block 3-cycle (so `U³ = I` exactly). On this pair,
/// `S # (U* S⁻¹ U) = diag(A # B⁻¹, B # C⁻¹, C # A⁻¹)`, which is verified
/// before returning.
pub fn embed_cyclic(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    c: &PositiveDefiniteMatrix,
) -> Result<(PositiveDefiniteMatrix, UnitaryMatrix)> {
    require_same_dim(&[a.dim(), b.dim(), c.dim()])?;
    let n = a.dim();
    let big = 3 * n;

    let blocks = [a.matrix(), b.matrix(), c.matrix()];
    let s_mat = ComplexMatrix::from_fn(big, |i, j| {
        let (bi, bj) = (i / n, j / n);
        if bi == bj {
            blocks[bi].get(i % n, j % n)
        } else {
            num_complex::Complex64::new(0.0, 0.0)
        }
    });
    let s = PositiveDefiniteMatrix::from_matrix(s_mat)?;

    // Block pattern: row 0 ← block 2, row 1 ← block 0, row 2 ← block 1.
    let u_mat = ComplexMatrix::from_fn(big, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let cycle = matches!((bi, bj), (0, 2) | (1, 0) | (2, 1));
        if cycle && i % n == j % n {
            num_complex::Complex64::new(1.0, 0.0)
        } else {
            num_complex::Complex64::new(0.0, 0.0)
        }
    });
    let cube = &(&u_mat * &u_mat) * &u_mat;
    debug_assert_eq!(
        (&cube - &ComplexMatrix::identity(big)).frobenius_norm(),
        0.0,
        "the block 3-cycle must cube to the identity exactly"
    );
    let u = UnitaryMatrix::new(u_mat)?;

    let mean = gmean(&s, &s.inverse().conjugate_by(&u)?)?;
    let ab = gmean(a, &b.inverse())?;
    let bc = gmean(b, &c.inverse())?;
    let ca = gmean(c, &a.inverse())?;
    let want_blocks = [ab.matrix(), bc.matrix(), ca.matrix()];
    let want = ComplexMatrix::from_fn(big, |i, j| {
        let (bi, bj) = (i / n, j / n);
        if bi == bj {
            want_blocks[bi].get(i % n, j % n)
        } else {
            num_complex::Complex64::new(0.0, 0.0)
        }
    });
    let defect = (mean.matrix() - &want).frobenius_norm();
    let tolerance = EMBED_BLOCK_TOL * floored(want.frobenius_norm());
    if defect > tolerance {
        return Err(Error::ConsistencyCheckFailed {
            context: "cyclic embedding block identity",
            defect,
            tolerance,
        });
    }
    Ok((s, u))
}
