//! Rank-revealing Gaussian elimination with complete pivoting, and the
//! [`Subspace`] type used for fixed-point sets, kernels and unobservable sets.

use nalgebra::{DMatrix, DVector, Vector3};
use serde::{Deserialize, Serialize};

/// Relative rank tolerance: entries below `RANK_TOL * max_row_norm` count as zero.
pub const RANK_TOL: f64 = 1e-9;

/// Membership tolerance for [`Subspace::contains`].
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Outcome of a complete-pivoting elimination.
#[derive(Debug, Clone)]
pub struct Elimination {
    pub rank: usize,
    /// Absolute threshold that was applied to pivots.
    pub threshold: f64,
    /// Smallest pivot accepted as nonzero, if any.
    pub min_pivot: Option<f64>,
    /// Largest remaining entry after elimination stopped.
    pub residual: f64,
    upper: DMatrix<f64>,
    col_perm: Vec<usize>,
}

impl Elimination {
    /// True when the rank decision sits within a factor of 10 of the threshold
    /// on either side.
    pub fn near_deficient(&self) -> bool {
        if self.threshold == 0.0 {
            return false;
        }
        let accepted_close = self
            .min_pivot
            .is_some_and(|p| p < 10.0 * self.threshold);
        let rejected_close = self.residual > 0.1 * self.threshold;
        accepted_close || rejected_close
    }

    /// Basis of the nullspace (not orthonormalised).
    pub fn nullspace(&self) -> Vec<DVector<f64>> {
        let n = self.col_perm.len();
        let r = self.rank;
        let mut out = Vec::with_capacity(n - r);
        for free in r..n {
            // Solve U11 xb = -U12[:, free] by back substitution, permuted order.
            let mut xp = DVector::zeros(n);
            xp[free] = 1.0;
            for i in (0..r).rev() {
                let mut acc = -self.upper[(i, free)];
                for j in (i + 1)..r {
                    acc -= self.upper[(i, j)] * xp[j];
                }
                xp[i] = acc / self.upper[(i, i)];
            }
            let mut x = DVector::zeros(n);
            for (k, &col) in self.col_perm.iter().enumerate() {
                x[col] = xp[k];
            }
            out.push(x);
        }
        out
    }
}

fn max_row_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.norm()).fold(0.0, f64::max)
}

/// Complete-pivoting elimination with threshold `rel_tol · max_row_norm(m)`.
pub fn eliminate(m: &DMatrix<f64>, rel_tol: f64) -> Elimination {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let threshold = rel_tol * max_row_norm(m);
    let mut rank = 0;
    let mut min_pivot: Option<f64> = None;
    let mut residual = 0.0;

    for k in 0..rows.min(cols) {
        let mut best = (k, k, 0.0f64);
        for i in k..rows {
            for j in k..cols {
                let v = a[(i, j)].abs();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= threshold || best.2 == 0.0 {
            residual = best.2;
            break;
        }
        a.swap_rows(k, best.0);
        a.swap_columns(k, best.1);
        col_perm.swap(k, best.1);
        let pivot = a[(k, k)];
        min_pivot = Some(min_pivot.map_or(pivot.abs(), |p: f64| p.min(pivot.abs())));
        for i in (k + 1)..rows {
            let factor = a[(i, k)] / pivot;
            if factor != 0.0 {
                for j in k..cols {
                    let v = a[(k, j)];
                    a[(i, j)] -= factor * v;
                }
            }
            a[(i, k)] = 0.0;
        }
        rank += 1;
    }
    if rank == rows.min(cols) {
        residual = 0.0;
    }

    Elimination {
        rank,
        threshold,
        min_pivot,
        residual,
        upper: a,
        col_perm,
    }
}

pub fn rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    eliminate(m, rel_tol).rank
}

/// A linear subspace of 3-space with an orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subspace {
    dim: usize,
    basis: Vec<[f64; 3]>,
}

impl Subspace {
    pub fn zero() -> Self {
        Self {
            dim: 0,
            basis: Vec::new(),
        }
    }

    pub fn full() -> Self {
        Self::span(&[Vector3::x(), Vector3::y(), Vector3::z()])
    }

    /// Orthonormal span of `vectors`; vectors that are dependent on earlier
    /// ones (relative residual below the rank tolerance) are dropped.
    pub fn span(vectors: &[Vector3<f64>]) -> Self {
        let mut basis: Vec<Vector3<f64>> = Vec::new();
        for v in vectors {
            let norm = v.norm();
            if norm == 0.0 || !norm.is_finite() {
                continue;
            }
            let mut w = v / norm;
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for b in &basis {
                    w -= b * b.dot(&w);
                }
            }
            let rest = w.norm();
            if rest > RANK_TOL {
                basis.push(w / rest);
            }
        }
        Self {
            dim: basis.len(),
            basis: basis.iter().map(|b| [b[0], b[1], b[2]]).collect(),
        }
    }

    /// Nullspace of a matrix with three columns.
    pub fn kernel_of(m: &DMatrix<f64>) -> Self {
        Self::kernel_with_report(m).0
    }

    pub fn kernel_with_report(m: &DMatrix<f64>) -> (Self, Elimination) {
        assert_eq!(m.ncols(), 3, "subspaces live in 3-space");
        let elim = eliminate(m, RANK_TOL);
        let vecs: Vec<Vector3<f64>> = elim
            .nullspace()
            .into_iter()
            .map(|v| Vector3::new(v[0], v[1], v[2]))
            .collect();
        (Self::span(&vecs), elim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Vec<Vector3<f64>> {
        self.basis
            .iter()
            .map(|b| Vector3::new(b[0], b[1], b[2]))
            .collect()
    }

    pub fn project(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.basis()
            .iter()
            .fold(Vector3::zeros(), |acc, b| acc + b * b.dot(v))
    }

    pub fn contains(&self, v: &Vector3<f64>) -> bool {
        (v - self.project(v)).norm() <= MEMBERSHIP_TOL * v.norm().max(1.0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    /// Same dimension and mutual containment.
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim == other.dim && self.contains_subspace(other) && other.contains_subspace(self)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // v in both iff (I - P1) v = 0 and (I - P2) v = 0
        let mut rows = Vec::new();
        for s in [self, other] {
            let p = s.basis().iter().fold(nalgebra::Matrix3::zeros(), |acc, b| {
                acc + b * b.transpose()
            });
            let comp = nalgebra::Matrix3::identity() - p;
            for r in 0..3 {
                rows.extend(comp.row(r).iter().copied());
            }
        }
        Subspace::kernel_of(&DMatrix::from_row_slice(6, 3, &rows))
    }
}
