//! Flows of linear vector fields.
//!
//! A linear vector field is given by a derivation
//!
//! ```text
//!     | a  b  0   |
//! D = | c  d  0   |
//!     | e  f  a+d |
//! ```
//!
//! and its flow is the linear map `exp(tD)` of coordinates. The closed form
//! assembles `exp(tA)` from the Sylvester coefficients of the 2×2 block
//! `A = [[a, b], [c, d]]` and the central row from the integral
//! `(f1(t), f2(t)) = ∫₀ᵗ exp(s(A − (a+d)I)ᵀ)(e, f) ds`. A classical RK4
//! integrator of the same ODE is provided as an independent check.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::GroupElement;

/// Relative gap below which the two eigenvalues of `A` are treated as equal.
pub const CONFLUENT_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum FlowError {
    #[error("RK4 needs at least one step")]
    ZeroSteps,
}

/// The six entries of a derivation of the Heisenberg algebra.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Derivation {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Derivation {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self { a, b, c, d, e, f }
    }

    pub fn from_array(p: [f64; 6]) -> Self {
        Self::new(p[0], p[1], p[2], p[3], p[4], p[5])
    }

    pub fn to_array(self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    /// `a + d`, the eigenvalue in the central direction.
    pub fn trace_a(&self) -> f64 {
        self.a + self.d
    }

    pub fn det_a(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.a,
            self.b,
            0.0,
            self.c,
            self.d,
            0.0,
            self.e,
            self.f,
            self.a + self.d,
        )
    }

    pub fn block(&self) -> Matrix2<f64> {
        Matrix2::new(self.a, self.b, self.c, self.d)
    }

    /// The vector field at `g`.
    pub fn field(&self, g: &GroupElement) -> GroupElement {
        GroupElement::from_vector(&(self.matrix() * g.to_vector()))
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// `exp(tA) = s0·I + s1·A`, together with the eigenvalues of `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SylvesterCoeffs {
    pub s0: f64,
    pub s1: f64,
    pub t: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    /// The confluent branch `α = β` was used.
    pub confluent: bool,
}

pub fn sylvester_coeffs(deriv: &Derivation, t: f64) -> SylvesterCoeffs {
    let m = 0.5 * deriv.trace_a();
    let half_gap = 0.5 * (deriv.a - deriv.d);
    let disc = half_gap * half_gap + deriv.b * deriv.c;
    let growth = (m * t).exp();

    // For α, β = m ± r the divided differences reduce to
    //   s1 = e^{mt} sinh(rt)/r,  s0 = e^{mt} (cosh(rt) − m sinh(rt)/r),
    // and to sin/cos for r = iq. Both avoid the 1/(β−α) cancellation.
    let (alpha, beta, gap) = if disc >= 0.0 {
        let r = disc.sqrt();
        (Complex64::new(m + r, 0.0), Complex64::new(m - r, 0.0), 2.0 * r)
    } else {
        let q = (-disc).sqrt();
        (Complex64::new(m, q), Complex64::new(m, -q), 2.0 * q)
    };
    let scale = 1.0f64.max(alpha.norm()).max(beta.norm());

    if gap < CONFLUENT_TOL * scale {
        return SylvesterCoeffs {
            s0: (1.0 - m * t) * growth,
            s1: t * growth,
            t,
            alpha: Complex64::new(m, 0.0),
            beta: Complex64::new(m, 0.0),
            confluent: true,
        };
    }

    let (ch, sh_over) = if disc >= 0.0 {
        let r = 0.5 * gap;
        ((r * t).cosh(), (r * t).sinh() / r)
    } else {
        let q = 0.5 * gap;
        ((q * t).cos(), (q * t).sin() / q)
    };
    SylvesterCoeffs {
        s0: growth * (ch - m * sh_over),
        s1: growth * sh_over,
        t,
        alpha,
        beta,
        confluent: false,
    }
}

/// `exp(tA)` for the 2×2 block.
pub fn exp2(deriv: &Derivation, t: f64) -> Matrix2<f64> {
    let sc = sylvester_coeffs(deriv, t);
    Matrix2::identity() * sc.s0 + deriv.block() * sc.s1
}

/// `(f1(t), f2(t)) = ∫₀ᵗ exp(sM)(e, f) ds` with `M = (A − (a+d)I)ᵀ`, read off
/// the last column of `exp(t·[[M, v], [0, 0]])`.
pub fn integral_term(deriv: &Derivation, t: f64) -> (f64, f64) {
    if t == 0.0 {
        return (0.0, 0.0);
    }
    let tr = deriv.trace_a();
    let m = (deriv.block() - Matrix2::identity() * tr).transpose();
    let aug = Matrix3::new(
        m[(0, 0)],
        m[(0, 1)],
        deriv.e,
        m[(1, 0)],
        m[(1, 1)],
        deriv.f,
        0.0,
        0.0,
        0.0,
    ) * t;
    let ex = aug.exp();
    (ex[(0, 2)], ex[(1, 2)])
}

/// The matrix `L(t)` with `flow(t, g) = L(t)·g`; equals `exp(tD)`.
pub fn flow_matrix(deriv: &Derivation, t: f64) -> Matrix3<f64> {
    let e2 = exp2(deriv, t);
    let (f1, f2) = integral_term(deriv, t);
    let central = (t * deriv.trace_a()).exp();
    Matrix3::new(
        e2[(0, 0)],
        e2[(0, 1)],
        0.0,
        e2[(1, 0)],
        e2[(1, 1)],
        0.0,
        central * f1,
        central * f2,
        central,
    )
}

pub fn flow(deriv: &Derivation, t: f64, g: &GroupElement) -> GroupElement {
    if t == 0.0 {
        return *g;
    }
    GroupElement::from_vector(&(flow_matrix(deriv, t) * g.to_vector()))
}

/// Classical fourth-order Runge–Kutta on `v' = D v` over `[0, t]`.
pub fn rk4_flow(
    deriv: &Derivation,
    t: f64,
    g: &GroupElement,
    steps: usize,
) -> Result<GroupElement, FlowError> {
    if steps == 0 {
        return Err(FlowError::ZeroSteps);
    }
    let d = deriv.matrix();
    let h = t / steps as f64;
    let mut v: Vector3<f64> = g.to_vector();
    for _ in 0..steps {
        let k1 = d * v;
        let k2 = d * (v + k1 * (0.5 * h));
        let k3 = d * (v + k2 * (0.5 * h));
        let k4 = d * (v + k3 * h);
        v += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    Ok(GroupElement::from_vector(&v))
}

/// One point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowSample {
    pub t: f64,
    pub point: GroupElement,
}

pub fn trajectory(deriv: &Derivation, g: &GroupElement, times: &[f64]) -> Vec<FlowSample> {
    times
        .iter()
        .map(|&t| FlowSample {
            t,
            point: flow(deriv, t, g),
        })
        .collect()
}
