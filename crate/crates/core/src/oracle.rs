//! Independent reference computations used by the test suites and `selftest`.
//!
//! Nothing in the analysis path calls into this module.

use nalgebra::{DMatrix, Matrix2, Matrix3};

const TAYLOR_ORDER: usize = 20;

/// Matrix exponential by scaling and squaring with a fixed-order Taylor
/// series; the scaled matrix has 1-norm at most 1/2.
pub fn reference_expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    if norm1 > 0.5 {
        squarings = (norm1 / 0.5).log2().ceil() as u32;
    }
    let scaled = a / 2f64.powi(squarings as i32);

    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=TAYLOR_ORDER {
        term = &term * &scaled / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn reference_expm2(a: &Matrix2<f64>) -> Matrix2<f64> {
    let d = reference_expm(&DMatrix::from_column_slice(2, 2, a.as_slice()));
    Matrix2::from_column_slice(d.as_slice())
}

pub fn reference_expm3(a: &Matrix3<f64>) -> Matrix3<f64> {
    let d = reference_expm(&DMatrix::from_column_slice(3, 3, a.as_slice()));
    Matrix3::from_column_slice(d.as_slice())
}

/// `‖a − b‖_F / max(‖b‖_F, tiny)`.
pub fn rel_frobenius<R: nalgebra::Dim, C: nalgebra::Dim, S1, S2>(
    a: &nalgebra::Matrix<f64, R, C, S1>,
    b: &nalgebra::Matrix<f64, R, C, S2>,
) -> f64
where
    S1: nalgebra::storage::Storage<f64, R, C>,
    S2: nalgebra::storage::Storage<f64, R, C>,
{
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        num += (x - y) * (x - y);
        den += y * y;
    }
    num.sqrt() / den.sqrt().max(f64::MIN_POSITIVE)
}
