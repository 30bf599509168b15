//! Conditional expectation onto the commutant of a unitary.
//!
//! For `U = Σ z_i P_i` the map `X ↦ Σ P_i X P_i` is the Hilbert-Schmidt
//! orthogonal projection onto `{X : XU = UX}` (a pinching). When `U^k = I`
//! the same map is the average of the first `k` unitary conjugations, which
//! this module also provides as an independent route.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermitian::HERMITIAN_TOL;
use crate::matrix::{floored, ComplexMatrix};
use crate::normal::normal_eig_impl;
use crate::unitary::UnitaryMatrix;

/// Default eigenvalue clustering tolerance. Structured unitaries (block
/// permutations, roots of unity) have O(1) gaps, far above this.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Tolerance on `|z_i| − 1` for cluster representatives.
pub const UNIT_MODULUS_TOL: f64 = 1e-9;

/// Tolerance on `Σ P_i = I`.
pub const RESOLUTION_TOL: f64 = 1e-10;

/// Tolerance on `P_i P_j = δ_ij P_i`.
pub const PROJECTION_TOL: f64 = 1e-9;

/// One spectral cluster: a unit-modulus representative eigenvalue, an
/// orthonormal basis of the clustered eigenspace, and its projection.
#[derive(Clone, Debug)]
pub struct SpectralCluster {
    pub value: Complex64,
    pub multiplicity: usize,
    /// Orthonormal columns spanning the cluster eigenspace.
    pub basis: Vec<Vec<Complex64>>,
    /// `Σ v v*` over the basis; Hermitian idempotent.
    pub projection: ComplexMatrix,
}

/// Spectral decomposition of a unitary, with eigenvalues grouped by the
/// transitive closure of `|z − z'| ≤ cluster_tol`.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    dim: usize,
    clusters: Vec<SpectralCluster>,
    /// Smallest distance between eigenvalues in different clusters
    /// (infinite for a single cluster). Small values flag fragile grouping.
    pub min_intercluster_gap: f64,
    /// Largest distance between eigenvalues inside one cluster.
    pub max_cluster_diameter: f64,
}

impl SpectralDecomposition {
    /// Computes the spectral projections of `U`.
    pub fn new(u: &UnitaryMatrix, cluster_tol: f64) -> Result<Self> {
        let n = u.dim();
        let (eigenvalues, vectors) = normal_eig_impl(u.matrix())?;

        // Sort by argument; on the unit circle, single linkage reduces to
        // chaining consecutive points plus a wrap-around merge.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            let ai = eigenvalues[i].im.atan2(eigenvalues[i].re);
            let aj = eigenvalues[j].im.atan2(eigenvalues[j].re);
            ai.partial_cmp(&aj).expect("finite eigenvalues")
        });

        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &idx in &order {
            let start_new = match groups.last() {
                None => true,
                Some(g) => {
                    let prev = eigenvalues[*g.last().expect("non-empty group")];
                    (eigenvalues[idx] - prev).norm() > cluster_tol
                }
            };
            if start_new {
                groups.push(Vec::new());
            }
            groups.last_mut().expect("just pushed").push(idx);
        }
        if groups.len() > 1 {
            let first = eigenvalues[groups[0][0]];
            let last_group = groups.last().expect("non-empty");
            let last = eigenvalues[*last_group.last().expect("non-empty group")];
            if (first - last).norm() <= cluster_tol {
                let tail = groups.pop().expect("non-empty");
                groups[0].splice(0..0, tail);
            }
        }

        let mut clusters = Vec::with_capacity(groups.len());
        for group in &groups {
            let mut sum = Complex64::new(0.0, 0.0);
            for &idx in group {
                sum += eigenvalues[idx];
            }
            let value = if sum.norm() > 1e-12 {
                sum / sum.norm()
            } else {
                let z = eigenvalues[group[0]];
                z / z.norm()
            };
            if (value.norm() - 1.0).abs() > UNIT_MODULUS_TOL {
                return Err(Error::ConsistencyCheckFailed {
                    context: "spectral cluster modulus",
                    defect: (value.norm() - 1.0).abs(),
                    tolerance: UNIT_MODULUS_TOL,
                });
            }
            let basis: Vec<Vec<Complex64>> = group.iter().map(|&idx| vectors.column(idx)).collect();
            let mut projection = ComplexMatrix::zeros(n);
            for v in &basis {
                projection = &projection + &ComplexMatrix::outer(v, v);
            }
            let projection = projection.symmetrized();
            clusters.push(SpectralCluster {
                value,
                multiplicity: group.len(),
                basis,
                projection,
            });
        }

        let decomposition = SpectralDecomposition {
            dim: n,
            clusters,
            min_intercluster_gap: pairwise_gap(&groups, &eigenvalues, false),
            max_cluster_diameter: pairwise_gap(&groups, &eigenvalues, true),
        };
        decomposition.validate()?;
        Ok(decomposition)
    }

    fn validate(&self) -> Result<()> {
        let mut sum = ComplexMatrix::zeros(self.dim);
        for c in &self.clusters {
            sum = &sum + &c.projection;
            let idem = (&(&c.projection * &c.projection) - &c.projection).frobenius_norm();
            if idem > PROJECTION_TOL {
                return Err(Error::ConsistencyCheckFailed {
                    context: "spectral projection idempotence",
                    defect: idem,
                    tolerance: PROJECTION_TOL,
                });
            }
        }
        let resolution = (&sum - &ComplexMatrix::identity(self.dim)).frobenius_norm();
        if resolution > RESOLUTION_TOL {
            return Err(Error::ConsistencyCheckFailed {
                context: "resolution of identity",
                defect: resolution,
                tolerance: RESOLUTION_TOL,
            });
        }
        for i in 0..self.clusters.len() {
            for j in 0..self.clusters.len() {
                if i == j {
                    continue;
                }
                let cross = (&self.clusters[i].projection * &self.clusters[j].projection)
                    .frobenius_norm();
                if cross > PROJECTION_TOL {
                    return Err(Error::ConsistencyCheckFailed {
                        context: "spectral projection orthogonality",
                        defect: cross,
                        tolerance: PROJECTION_TOL,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clusters(&self) -> &[SpectralCluster] {
        &self.clusters
    }

    /// The pinching `Σ P_i X P_i`. Hermitian input yields (exactly
    /// symmetrized) Hermitian output.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: self.dim,
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim);
        for c in &self.clusters {
            out = &out + &(&(&c.projection * x) * &c.projection);
        }
        if x.hermitian_defect() <= HERMITIAN_TOL * floored(x.frobenius_norm()) {
            out = out.symmetrized();
        }
        Ok(out)
    }
}

fn pairwise_gap(groups: &[Vec<usize>], eigenvalues: &[Complex64], within: bool) -> f64 {
    let mut best = if within { 0.0 } else { f64::INFINITY };
    for (gi, a) in groups.iter().enumerate() {
        for (gj, b) in groups.iter().enumerate() {
            if within != (gi == gj) {
                continue;
            }
            for &i in a {
                for &j in b {
                    if i == j {
                        continue;
                    }
                    let d = (eigenvalues[i] - eigenvalues[j]).norm();
                    best = if within { best.max(d) } else { best.min(d) };
                }
            }
        }
    }
    best
}

/// `E_U(X) = Σ P_i X P_i` with the given clustering tolerance.
pub fn expect_u(
    u: &UnitaryMatrix,
    x: &ComplexMatrix,
    cluster_tol: f64,
) -> Result<ComplexMatrix> {
    SpectralDecomposition::new(u, cluster_tol)?.apply(x)
}

/// The power-average form `(1/k) Σ_{i<k} U*^i X U^i`, valid only when
/// `U^k = I` (checked to 1e-8).
pub fn expect_u_power_avg(
    u: &UnitaryMatrix,
    x: &ComplexMatrix,
    k: u32,
) -> Result<ComplexMatrix> {
    if u.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: x.dim(),
        });
    }
    assert!(k >= 1, "the averaging order must be positive");
    let mut power = ComplexMatrix::identity(u.dim());
    for _ in 0..k {
        power = &power * u.matrix();
    }
    let defect = (&power - &ComplexMatrix::identity(u.dim())).frobenius_norm();
    if defect > 1e-8 {
        return Err(Error::NotRootOfIdentity { defect, order: k });
    }
    let mut term = x.clone();
    let mut sum = x.clone();
    let adj = u.matrix().adjoint();
    for _ in 1..k {
        term = &(&adj * &term) * u.matrix();
        sum = &sum + &term;
    }
    Ok(sum.scaled(1.0 / f64::from(k)))
}
