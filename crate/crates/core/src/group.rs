//! Group and Lie-algebra primitives of the 3-dimensional Heisenberg group in
//! global coordinates `(x, y, z)`.
//!
//! The product is `(x, y, z)·(w, s, t) = (x + w + y·t, y + s, z + t)` and the
//! bracket is `[(x, y, z), (a, b, c)] = (0, 0, y·a − b·x)`.

use std::fmt;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

/// A point of the group.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GroupElement {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// An element of the Lie algebra, in the basis `(X, Y, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Group product, `self · other`.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        mul(self, other)
    }

    pub fn inverse(&self) -> GroupElement {
        inverse(self)
    }

    /// Largest componentwise distance to `other`.
    pub fn max_abs_diff(&self, other: &GroupElement) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    /// Upper-triangular unipotent matrix with `y`, `z` in the first row and
    /// `x` in the second. Debug helper only; note that the matrix product
    /// does not reproduce [`mul`] (the two charts differ).
    pub fn to_matrix(&self) -> Matrix3<f64> {
        Matrix3::new(1.0, self.y, self.z, 0.0, 1.0, self.x, 0.0, 0.0, 1.0)
    }
}

impl From<[f64; 3]> for GroupElement {
    fn from(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl AlgebraElement {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }
}

pub fn mul(g: &GroupElement, h: &GroupElement) -> GroupElement {
    GroupElement {
        x: g.x + h.x + g.y * h.z,
        y: g.y + h.y,
        z: g.z + h.z,
    }
}

pub fn inverse(g: &GroupElement) -> GroupElement {
    GroupElement {
        x: g.y * g.z - g.x,
        y: -g.y,
        z: -g.z,
    }
}

pub fn bracket(u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
    AlgebraElement {
        x: 0.0,
        y: 0.0,
        z: u.y * v.x - v.y * u.x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(x: f64, y: f64, z: f64) -> GroupElement {
        GroupElement::new(x, y, z)
    }

    #[test]
    fn product_examples() {
        let p = g(1.5, -2.0, 0.25);
        assert_eq!(mul(&GroupElement::IDENTITY, &p), p);
        assert_eq!(mul(&g(1.0, 2.0, 3.0), &g(4.0, 5.0, 6.0)), g(17.0, 7.0, 9.0));
        assert_eq!(
            mul(&g(2.0, 3.0, 4.0), &g(10.0, -3.0, -4.0)),
            GroupElement::IDENTITY
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&GroupElement::IDENTITY), GroupElement::IDENTITY);
        assert_eq!(inverse(&g(2.0, 3.0, 4.0)), g(10.0, -3.0, -4.0));
        assert_eq!(inverse(&g(1.0, 0.0, 5.0)), g(-1.0, 0.0, -5.0));
    }

    #[test]
    fn bracket_examples() {
        let x = AlgebraElement::new(1.0, 0.0, 0.0);
        let y = AlgebraElement::new(0.0, 1.0, 0.0);
        assert_eq!(bracket(&x, &y), AlgebraElement::new(0.0, 0.0, -1.0));
        assert_eq!(bracket(&y, &x), AlgebraElement::new(0.0, 0.0, 1.0));
        let u = AlgebraElement::new(0.3, -1.7, 2.0);
        assert_eq!(bracket(&u, &u).z, 0.0);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn element() -> impl Strategy<Value = GroupElement> {
        (coord(), coord(), coord()).prop_map(|(x, y, z)| g(x, y, z))
    }

    fn algebra() -> impl Strategy<Value = AlgebraElement> {
        (coord(), coord(), coord()).prop_map(|(x, y, z)| AlgebraElement::new(x, y, z))
    }

    proptest! {
        #[test]
        fn associative(a in element(), b in element(), c in element()) {
            let lhs = mul(&mul(&a, &b), &c);
            let rhs = mul(&a, &mul(&b, &c));
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + lhs.x.abs()));
        }

        #[test]
        fn inverse_both_sides(a in element()) {
            let scale = 1.0 + (a.y * a.z).abs() + a.x.abs();
            prop_assert!(mul(&a, &inverse(&a)).max_abs_diff(&GroupElement::IDENTITY) <= 1e-12 * scale);
            prop_assert!(mul(&inverse(&a), &a).max_abs_diff(&GroupElement::IDENTITY) <= 1e-12 * scale);
        }

        #[test]
        fn bracket_is_central_and_alternating(u in algebra(), v in algebra(), w in algebra()) {
            let uv = bracket(&u, &v);
            let vu = bracket(&v, &u);
            prop_assert_eq!(uv.x, 0.0);
            prop_assert_eq!(uv.y, 0.0);
            prop_assert_eq!(uv.z, -vu.z);
            prop_assert_eq!(bracket(&u, &bracket(&v, &w)).z, 0.0);
            prop_assert_eq!(bracket(&AlgebraElement::new(0.0, 0.0, 1.0), &u).z, 0.0);
        }
    }
}
