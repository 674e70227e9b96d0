//! The Euclidean baseline: rank of `[C; CA; …; CA^{n−1}]`.

use nalgebra::DMatrix;

use super::ObservabilityError;
use crate::linalg::{self, RANK_TOL};

pub fn observability_matrix(a: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<DMatrix<f64>, ObservabilityError> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(ObservabilityError::Dimension(format!(
            "A must be square and nonempty, got {}×{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if c.nrows() == 0 || c.ncols() != n {
        return Err(ObservabilityError::Dimension(format!(
            "C must be l×{n} with l ≥ 1, got {}×{}",
            c.nrows(),
            c.ncols()
        )));
    }
    let l = c.nrows();
    let mut o = DMatrix::zeros(l * n, n);
    let mut block = c.clone();
    for k in 0..n {
        o.rows_mut(k * l, l).copy_from(&block);
        block = &block * a;
    }
    Ok(o)
}

pub fn kalman_rank(a: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<usize, ObservabilityError> {
    Ok(linalg::rank(&observability_matrix(a, c)?, RANK_TOL))
}
