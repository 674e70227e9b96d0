//! Sampling of the integral term `(f1, f2)` for kernels of the form `{z = 0}`.

use serde::{Deserialize, Serialize};

use super::ObservabilityError;
use crate::flow::{integral_term, Derivation};

/// Threshold (relative to the sampled scale) below which `f_j` counts as zero.
pub const ZERO_TOL: f64 = 1e-10;

/// A time grid `−t_max, …, 0, …, t_max` with `2·half_points + 1` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_max: f64,
    pub half_points: usize,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            t_max: 2.0,
            half_points: 40,
        }
    }
}

impl TimeGrid {
    pub fn times(&self) -> Result<Vec<f64>, ObservabilityError> {
        if !(self.t_max.is_finite() && self.t_max > 0.0) || self.half_points == 0 {
            return Err(ObservabilityError::BadGrid);
        }
        let n = self.half_points as i64;
        Ok((-n..=n)
            .map(|i| self.t_max * i as f64 / n as f64)
            .collect())
    }
}

/// What the `J = I1 ∩ I2` argument claims about the unobservable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IClaim {
    /// `J` empty and some `f_j` nonzero: the argument concludes `I = {0}`.
    Discrete,
    /// `J` nonempty, or both `f_j` vanish identically.
    NotDiscrete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JTestReport {
    pub times: Vec<f64>,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub f1_identically_zero: bool,
    pub f2_identically_zero: bool,
    /// No grid point has both `|f1|` and `|f2|` above threshold.
    pub j_empty: bool,
    /// `f1 x + f2 y = 0` on the grid forces `x = 0`.
    pub x_forced: bool,
    pub y_forced: bool,
    pub claim: IClaim,
}

pub fn j_test_report(
    deriv: &Derivation,
    grid: &TimeGrid,
) -> Result<JTestReport, ObservabilityError> {
    let times = grid.times()?;
    let (f1, f2): (Vec<f64>, Vec<f64>) = times.iter().map(|&t| integral_term(deriv, t)).unzip();
    let scale = f1
        .iter()
        .chain(f2.iter())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let thr = ZERO_TOL * scale;
    let f1_zero = f1.iter().all(|v| v.abs() <= thr);
    let f2_zero = f2.iter().all(|v| v.abs() <= thr);
    let j_empty = !f1
        .iter()
        .zip(&f2)
        .any(|(a, b)| a.abs() > thr && b.abs() > thr);
    let claim = if j_empty && !(f1_zero && f2_zero) {
        IClaim::Discrete
    } else {
        IClaim::NotDiscrete
    };
    Ok(JTestReport {
        times,
        f1,
        f2,
        f1_identically_zero: f1_zero,
        f2_identically_zero: f2_zero,
        j_empty,
        x_forced: !f1_zero,
        y_forced: !f2_zero,
        claim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_integrand() {
        let r = j_test_report(&Derivation::new(0.5, 1.0, -1.0, 0.3, 0.0, 0.0), &TimeGrid::default()).unwrap();
        assert!(r.f1_identically_zero && r.f2_identically_zero && r.j_empty);
        assert_eq!(r.claim, IClaim::NotDiscrete);
        let mid = r.times.iter().position(|&t| t == 0.0).unwrap();
        assert_eq!((r.f1[mid], r.f2[mid]), (0.0, 0.0));
    }

    #[test]
    fn constant_integrand_forces_x() {
        let r = j_test_report(&Derivation::new(0.0, 0.0, 0.0, 0.0, 1.0, 0.0), &TimeGrid::default()).unwrap();
        assert!(!r.f1_identically_zero && r.f2_identically_zero && r.j_empty);
        assert!(r.x_forced && !r.y_forced);
        for (t, f) in r.times.iter().zip(&r.f1) {
            assert!((f - t).abs() < 1e-13);
        }
        assert_eq!(r.claim, IClaim::Discrete);
    }

    #[test]
    fn equal_integrals_give_nonempty_j() {
        let r = j_test_report(&Derivation::new(0.0, 0.0, 0.0, 0.0, 1.0, 1.0), &TimeGrid::default()).unwrap();
        assert!(!r.j_empty);
        assert_eq!(r.claim, IClaim::NotDiscrete);
        for ((t, a), b) in r.times.iter().zip(&r.f1).zip(&r.f2) {
            assert!((a - t).abs() < 1e-13 && (b - t).abs() < 1e-13);
        }
    }

    #[test]
    fn grid_validation() {
        let bad = TimeGrid { t_max: 0.0, half_points: 3 };
        assert_eq!(bad.times(), Err(ObservabilityError::BadGrid));
        let bad = TimeGrid { t_max: 1.0, half_points: 0 };
        assert!(j_test_report(&Derivation::default(), &bad).is_err());
    }
}
