//! Closed simply connected subgroups `H1`–`H9`, homomorphisms onto them and
//! their kernels.
//!
//! Every homomorphism here is linear in coordinates and ignores `x`, so it is
//! stored as a 3×3 matrix with a zero first column. Its kernel is the
//! nullspace of that matrix.

use std::fmt;

use nalgebra::{DMatrix, Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{mul, GroupElement};
use crate::linalg::{self, Subspace, MEMBERSHIP_TOL, RANK_TOL};

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("unknown subgroup tag `{0}`")]
    UnknownTag(String),
    #[error("{0} needs a_hat·b_hat ≠ 0 (got a_hat={1}, b_hat={2})")]
    DegenerateLine(&'static str, f64, f64),
    #[error("{target} takes {expected} coefficients, got {got}")]
    CoefficientCount {
        target: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("coefficients must be finite")]
    NonFinite,
    #[error("x-coefficient of output row {0} is nonzero; homomorphisms cannot depend on x")]
    NonzeroXCoefficient(usize),
    #[error("map violates h(g·g') = h(g)·h(g')")]
    NotAHomomorphism,
    #[error("image of the map leaves {0}")]
    ImageOutsideTarget(&'static str),
}

/// One of the nine subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum SubgroupId {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8 { a_hat: f64, b_hat: f64 },
    H9 { a_hat: f64, b_hat: f64 },
}

impl SubgroupId {
    pub const PLAIN: [SubgroupId; 7] = [
        SubgroupId::H1,
        SubgroupId::H2,
        SubgroupId::H3,
        SubgroupId::H4,
        SubgroupId::H5,
        SubgroupId::H6,
        SubgroupId::H7,
    ];

    /// Parse a tag; `line` supplies `(a_hat, b_hat)` for H8/H9.
    pub fn parse(tag: &str, line: Option<(f64, f64)>) -> Result<Self, CatalogError> {
        let (a_hat, b_hat) = line.unwrap_or((0.0, 0.0));
        let id = match tag {
            "H1" => SubgroupId::H1,
            "H2" => SubgroupId::H2,
            "H3" => SubgroupId::H3,
            "H4" => SubgroupId::H4,
            "H5" => SubgroupId::H5,
            "H6" => SubgroupId::H6,
            "H7" => SubgroupId::H7,
            "H8" => SubgroupId::H8 { a_hat, b_hat },
            "H9" => SubgroupId::H9 { a_hat, b_hat },
            other => return Err(CatalogError::UnknownTag(other.to_string())),
        };
        id.validate()?;
        Ok(id)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SubgroupId::H1 => "H1",
            SubgroupId::H2 => "H2",
            SubgroupId::H3 => "H3",
            SubgroupId::H4 => "H4",
            SubgroupId::H5 => "H5",
            SubgroupId::H6 => "H6",
            SubgroupId::H7 => "H7",
            SubgroupId::H8 { .. } => "H8",
            SubgroupId::H9 { .. } => "H9",
        }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        match *self {
            SubgroupId::H8 { a_hat, b_hat } | SubgroupId::H9 { a_hat, b_hat } => {
                if !(a_hat.is_finite() && b_hat.is_finite()) {
                    return Err(CatalogError::NonFinite);
                }
                if a_hat * b_hat == 0.0 {
                    return Err(CatalogError::DegenerateLine(self.tag(), a_hat, b_hat));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Number of coefficients `build_homomorphism` expects.
    pub fn coefficient_count(&self) -> usize {
        match self {
            SubgroupId::H1 | SubgroupId::H2 => 4,
            _ => 2,
        }
    }

    /// Spanning vectors of the subgroup as a subspace of coordinates.
    fn directions(&self) -> Vec<Vector3<f64>> {
        match *self {
            SubgroupId::H1 => vec![Vector3::x(), Vector3::y()],
            SubgroupId::H2 => vec![Vector3::x(), Vector3::z()],
            SubgroupId::H3 => vec![Vector3::y()],
            SubgroupId::H4 => vec![Vector3::z()],
            SubgroupId::H5 => vec![Vector3::x()],
            SubgroupId::H6 => vec![Vector3::new(1.0, 1.0, 0.0)],
            SubgroupId::H7 => vec![Vector3::new(1.0, 0.0, 1.0)],
            SubgroupId::H8 { a_hat, b_hat } => vec![Vector3::new(a_hat, b_hat, 0.0)],
            SubgroupId::H9 { a_hat, b_hat } => vec![Vector3::new(a_hat, 0.0, b_hat)],
        }
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::span(&self.directions())
    }

    /// Output coordinates a homomorphism onto this subgroup may populate.
    fn output_slots(&self) -> &'static [usize] {
        match self {
            SubgroupId::H1 | SubgroupId::H6 | SubgroupId::H8 { .. } => &[0, 1],
            SubgroupId::H2 | SubgroupId::H7 | SubgroupId::H9 { .. } => &[0, 2],
            SubgroupId::H3 => &[1],
            SubgroupId::H4 => &[2],
            SubgroupId::H5 => &[0],
        }
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupId::H8 { a_hat, b_hat } | SubgroupId::H9 { a_hat, b_hat } => {
                write!(f, "{}(a_hat={a_hat}, b_hat={b_hat})", self.tag())
            }
            _ => f.write_str(self.tag()),
        }
    }
}

pub fn subgroup_contains(id: &SubgroupId, g: &GroupElement) -> bool {
    id.subspace().contains(&g.to_vector())
}

/// A homomorphism from the Heisenberg group onto one of `H1`–`H9`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Homomorphism {
    pub target: SubgroupId,
    /// Raw coefficients as supplied to [`build_homomorphism`].
    pub coefficients: Vec<f64>,
    /// Rows of the output map: `h(g) = map · g`.
    pub map: [[f64; 3]; 3],
}

impl Homomorphism {
    /// Validate an explicit output matrix against the homomorphism law and
    /// the target.
    pub fn from_rows(target: SubgroupId, map: [[f64; 3]; 3]) -> Result<Self, CatalogError> {
        target.validate()?;
        if map.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CatalogError::NonFinite);
        }
        if let Some(i) = map.iter().position(|row| row[0] != 0.0) {
            return Err(CatalogError::NonzeroXCoefficient(i));
        }
        // With a zero x-column, h(g·g') − h(g)·h(g') = −h(g)_y·h(g')_z·e₁,
        // which vanishes identically iff the y- or z-output row is zero.
        let y_row_zero = map[1].iter().all(|&v| v == 0.0);
        let z_row_zero = map[2].iter().all(|&v| v == 0.0);
        if !(y_row_zero || z_row_zero) {
            return Err(CatalogError::NotAHomomorphism);
        }
        let h = Self {
            target,
            coefficients: Vec::new(),
            map,
        };
        let target_space = target.subspace();
        let m = h.matrix();
        for j in 0..3 {
            if !target_space.contains(&m.column(j).into_owned()) {
                return Err(CatalogError::ImageOutsideTarget(target.tag()));
            }
        }
        Ok(h)
    }

    /// No validation at all. Only useful for exercising the checks.
    pub fn from_rows_unchecked(target: SubgroupId, map: [[f64; 3]; 3]) -> Self {
        Self {
            target,
            coefficients: Vec::new(),
            map,
        }
    }

    /// The zero map, `K` = whole group.
    pub fn trivial(target: SubgroupId) -> Self {
        Self::from_rows_unchecked(target, [[0.0; 3]; 3])
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        let m = &self.map;
        Matrix3::new(
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        )
    }

    pub fn matrix_dyn(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(3, 3, &self.map.concat())
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        GroupElement::from_vector(&(self.matrix() * g.to_vector()))
    }

    pub fn is_trivial(&self) -> bool {
        self.map.iter().flatten().all(|&v| v == 0.0)
    }

    /// The coefficient matrix `B`: the `(y, z)` parts of the (at most two)
    /// output rows, padded with a zero row for single-functional families.
    pub fn b_matrix(&self) -> [[f64; 2]; 2] {
        let slots = self.target.output_slots();
        let mut b = [[0.0; 2]; 2];
        for (k, &slot) in slots.iter().enumerate() {
            b[k] = [self.map[slot][1], self.map[slot][2]];
        }
        b
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comp = |row: &[f64; 3]| {
            let mut terms = Vec::new();
            for (c, name) in row.iter().zip(["x", "y", "z"]) {
                if *c != 0.0 {
                    terms.push(format!("{c}{name}"));
                }
            }
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        write!(
            f,
            "h(x,y,z) = ({}, {}, {}) onto {}",
            comp(&self.map[0]),
            comp(&self.map[1]),
            comp(&self.map[2]),
            self.target
        )
    }
}

/// Build the homomorphism family for `target`.
///
/// Coefficients: `(β1, γ1, β2, γ2)` for H1/H2, `(β, γ)` for H3–H7 and
/// `(α, β)` for H8/H9 (whose `â, b̂` live in the id).
pub fn build_homomorphism(target: SubgroupId, coeffs: &[f64]) -> Result<Homomorphism, CatalogError> {
    target.validate()?;
    let expected = target.coefficient_count();
    if coeffs.len() != expected {
        return Err(CatalogError::CoefficientCount {
            target: target.tag(),
            expected,
            got: coeffs.len(),
        });
    }
    if coeffs.iter().any(|v| !v.is_finite()) {
        return Err(CatalogError::NonFinite);
    }
    let row = |b: f64, g: f64| [0.0, b, g];
    let zero = [0.0; 3];
    let map = match target {
        SubgroupId::H1 => [row(coeffs[0], coeffs[1]), row(coeffs[2], coeffs[3]), zero],
        SubgroupId::H2 => [row(coeffs[0], coeffs[1]), zero, row(coeffs[2], coeffs[3])],
        SubgroupId::H3 => [zero, row(coeffs[0], coeffs[1]), zero],
        SubgroupId::H4 => [zero, zero, row(coeffs[0], coeffs[1])],
        SubgroupId::H5 => [row(coeffs[0], coeffs[1]), zero, zero],
        SubgroupId::H6 => [row(coeffs[0], coeffs[1]), row(coeffs[0], coeffs[1]), zero],
        SubgroupId::H7 => [row(coeffs[0], coeffs[1]), zero, row(coeffs[0], coeffs[1])],
        SubgroupId::H8 { a_hat, b_hat } => [
            row(coeffs[0] * a_hat, coeffs[1] * a_hat),
            row(coeffs[0] * b_hat, coeffs[1] * b_hat),
            zero,
        ],
        SubgroupId::H9 { a_hat, b_hat } => [
            row(coeffs[0] * a_hat, coeffs[1] * a_hat),
            zero,
            row(coeffs[0] * b_hat, coeffs[1] * b_hat),
        ],
    };
    let mut h = Homomorphism::from_rows(target, map)?;
    h.coefficients = coeffs.to_vec();
    Ok(h)
}

/// Sampled check of `h(g·g') = h(g)·h(g')` on `trials` random pairs with
/// coordinates in `[-10, 10]`.
pub fn homomorphism_check(h: &Homomorphism, trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        GroupElement::new(
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
        )
    };
    (0..trials).all(|_| {
        let g = draw();
        let g2 = draw();
        let lhs = h.apply(&mul(&g, &g2));
        let rhs = mul(&h.apply(&g), &h.apply(&g2));
        let scale = 1.0f64.max(lhs.to_vector().norm()).max(rhs.to_vector().norm());
        lhs.max_abs_diff(&rhs) <= 1e-12 * scale
    })
}

/// Shape of a kernel, following the zero pattern of the coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelCase {
    /// `β = γ = 0`: the whole group.
    FullGroup,
    /// `β ≠ 0, γ = 0`: the plane `y = 0`.
    YZero,
    /// `β = 0, γ ≠ 0`: the plane `z = 0`.
    ZZero,
    /// `β, γ ≠ 0`: the plane `β y = −γ z`.
    Mixed,
    /// `B` invertible: the x-axis.
    XAxis,
}

impl KernelCase {
    pub fn label(&self) -> &'static str {
        match self {
            KernelCase::FullGroup => "full-group",
            KernelCase::YZero => "{y=0}",
            KernelCase::ZZero => "{z=0}",
            KernelCase::Mixed => "{b1*y = -g1*z}",
            KernelCase::XAxis => "x-axis (B invertible)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub subspace: Subspace,
    pub case: KernelCase,
    /// The `(β, γ)` row the case was read from (leading nonzero row of `B`).
    pub leading_row: [f64; 2],
}

pub fn kernel(h: &Homomorphism) -> Kernel {
    let subspace = Subspace::kernel_of(&h.matrix_dyn());
    let b = h.b_matrix();
    let b_dyn = DMatrix::from_row_slice(2, 2, &[b[0][0], b[0][1], b[1][0], b[1][1]]);
    let leading_row = if b[0] != [0.0, 0.0] { b[0] } else { b[1] };
    let case = if linalg::rank(&b_dyn, RANK_TOL) == 2 {
        KernelCase::XAxis
    } else {
        match (leading_row[0] != 0.0, leading_row[1] != 0.0) {
            (false, false) => KernelCase::FullGroup,
            (true, false) => KernelCase::YZero,
            (false, true) => KernelCase::ZZero,
            (true, true) => KernelCase::Mixed,
        }
    };
    Kernel {
        subspace,
        case,
        leading_row,
    }
}

/// `h(g)` is the identity (to the membership tolerance).
pub fn in_kernel(h: &Homomorphism, g: &GroupElement) -> bool {
    h.apply(g).to_vector().norm() <= MEMBERSHIP_TOL * g.to_vector().norm().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h1(c: [f64; 4]) -> Homomorphism {
        build_homomorphism(SubgroupId::H1, &c).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(subgroup_contains(&SubgroupId::H1, &GroupElement::new(3.0, 1.0, 0.0)));
        assert!(!subgroup_contains(&SubgroupId::H1, &GroupElement::new(3.0, 1.0, 0.5)));
        assert!(subgroup_contains(&SubgroupId::H4, &GroupElement::new(0.0, 0.0, 7.0)));
        let h8 = SubgroupId::H8 { a_hat: 1.0, b_hat: 2.0 };
        assert!(subgroup_contains(&h8, &GroupElement::new(1.0, 2.0, 0.0)));
        assert!(!subgroup_contains(&h8, &GroupElement::new(1.0, 3.0, 0.0)));
        assert!(subgroup_contains(&SubgroupId::H6, &GroupElement::new(-2.0, -2.0, 0.0)));
        assert!(subgroup_contains(&SubgroupId::H7, &GroupElement::new(4.0, 0.0, 4.0)));
    }

    #[test]
    fn worked_example_onto_h1() {
        let h = h1([1.0, 0.0, 0.0, 1.0]);
        assert_eq!(h.apply(&GroupElement::new(5.0, 2.0, 3.0)), GroupElement::new(2.0, 3.0, 0.0));
        assert!(homomorphism_check(&h, 1000, 1));
        let k = kernel(&h);
        assert_eq!(k.case, KernelCase::XAxis);
        assert_eq!(k.subspace.dim(), 1);
        assert!(k.subspace.contains(&Vector3::x()));
    }

    #[test]
    fn single_functional_onto_h3() {
        let h = build_homomorphism(SubgroupId::H3, &[1.0, 2.0]).unwrap();
        assert_eq!(h.apply(&GroupElement::new(9.0, 1.0, 1.0)), GroupElement::new(0.0, 3.0, 0.0));
        let k = kernel(&h);
        assert_eq!(k.case, KernelCase::Mixed);
        assert!(k.subspace.contains(&Vector3::new(0.0, -2.0, 1.0)));
    }

    #[test]
    fn x_dependence_is_rejected() {
        let bad = [[1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]];
        assert_eq!(
            Homomorphism::from_rows(SubgroupId::H5, bad),
            Err(CatalogError::NonzeroXCoefficient(0))
        );
        let unchecked = Homomorphism::from_rows_unchecked(SubgroupId::H5, bad);
        assert!(!homomorphism_check(&unchecked, 100, 3));
    }

    #[test]
    fn zero_map() {
        let h = h1([0.0; 4]);
        assert!(h.is_trivial());
        assert!(homomorphism_check(&h, 10, 0));
        let k = kernel(&h);
        assert_eq!(k.case, KernelCase::FullGroup);
        assert_eq!(k.subspace.dim(), 3);
    }

    #[test]
    fn degenerate_b_cases() {
        let k = kernel(&h1([2.0, 0.0, 4.0, 0.0]));
        assert_eq!(k.case, KernelCase::YZero);
        assert!(k.subspace.same_as(&Subspace::span(&[Vector3::x(), Vector3::z()])));
        let k = kernel(&h1([0.0, 3.0, 0.0, 0.0]));
        assert_eq!(k.case, KernelCase::ZZero);
        assert!(k.subspace.same_as(&Subspace::span(&[Vector3::x(), Vector3::y()])));
        let k = kernel(&h1([1.0, 2.0, 2.0, 4.0]));
        assert_eq!(k.case, KernelCase::Mixed);
        assert_eq!(k.subspace.dim(), 2);
    }

    #[test]
    fn line_subgroups_validate_a_hat_b_hat() {
        assert_eq!(
            SubgroupId::parse("H8", Some((0.0, 1.0))),
            Err(CatalogError::DegenerateLine("H8", 0.0, 1.0))
        );
        let bad = SubgroupId::H9 { a_hat: 2.0, b_hat: 0.0 };
        assert!(build_homomorphism(bad, &[1.0, 1.0]).is_err());
        assert!(SubgroupId::parse("H10", None).is_err());
    }

    #[test]
    fn coefficient_count_enforced() {
        assert_eq!(
            build_homomorphism(SubgroupId::H1, &[1.0, 2.0]),
            Err(CatalogError::CoefficientCount {
                target: "H1",
                expected: 4,
                got: 2
            })
        );
    }

    #[test]
    fn non_homomorphic_rows_rejected() {
        // both y and z outputs populated: cross term leaks
        let map = [[0.0; 3], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(
            Homomorphism::from_rows(SubgroupId::H1, map),
            Err(CatalogError::NotAHomomorphism)
        );
        assert!(!homomorphism_check(&Homomorphism::from_rows_unchecked(SubgroupId::H1, map), 100, 0));
        // image leaves H3
        let map = [[0.0, 1.0, 0.0], [0.0; 3], [0.0; 3]];
        assert_eq!(
            Homomorphism::from_rows(SubgroupId::H3, map),
            Err(CatalogError::ImageOutsideTarget("H3"))
        );
    }
}
