//! Fixed points of a linear vector field: the nullspace of `D`, labelled by
//! the branch of the case analysis on `A`.

use nalgebra::{DMatrix, Vector3};
use serde::{Deserialize, Serialize};

use crate::flow::Derivation;
use crate::linalg::Subspace;

/// Tolerance for deciding the branch conditions (`det A = 0`, `a = −d`,
/// `f = be/a`).
pub const BRANCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixedPointCase {
    /// `A` invertible, `a ≠ −d`: only the identity.
    InvertibleTraceNonzero,
    /// `A` invertible, `a = −d`: the z-axis.
    InvertibleTraceZero,
    /// `A` singular, `a ≠ −d`, `f ≠ be/a`: a line.
    SingularGeneric,
    /// `A` singular, `a = −d`, `f ≠ be/a`: the z-axis.
    SingularTraceZero,
    /// `A` singular, `a ≠ −d`, `f = be/a`: a line in `z = 0`.
    SingularResonant,
    /// `A` singular, `a = −d`, `f = be/a`: the plane `ax + by = 0`.
    SingularTraceZeroResonant,
    /// `A` singular with `a = d = 0`; only the nullspace is reported.
    Degenerate,
}

impl FixedPointCase {
    pub const ALL_LABELLED: [FixedPointCase; 6] = [
        FixedPointCase::InvertibleTraceNonzero,
        FixedPointCase::InvertibleTraceZero,
        FixedPointCase::SingularGeneric,
        FixedPointCase::SingularTraceZero,
        FixedPointCase::SingularResonant,
        FixedPointCase::SingularTraceZeroResonant,
    ];
}

/// Which row of `A` the singular branches were reduced with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pivot {
    /// `a ≠ 0`: `x = −by/a`.
    A,
    /// `a = 0` (or `|d| > |a|`): `y = −cx/d`, roles of `(a,b,e)` and `(d,c,f)` swapped.
    D,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointReport {
    /// `Fix(φ)` = nullspace of `D`.
    pub subspace: Subspace,
    pub case: FixedPointCase,
    pub pivot: Pivot,
    /// The set the case table states for this branch, when it has one.
    pub stated: Option<Subspace>,
    pub near_rank_deficient: bool,
}

fn near_zero(value: f64, scale: f64) -> bool {
    value.abs() <= BRANCH_TOL * scale.max(1.0)
}

pub fn is_singular(deriv: &Derivation) -> bool {
    let ad = deriv.a * deriv.d;
    let bc = deriv.b * deriv.c;
    near_zero(ad - bc, ad.abs().max(bc.abs()))
}

pub fn is_trace_zero(deriv: &Derivation) -> bool {
    near_zero(deriv.a + deriv.d, deriv.a.abs().max(deriv.d.abs()))
}

/// `f = be/a` (pivot `a`) or its mirror `e = cf/d` (pivot `d`), cleared of
/// denominators.
fn is_resonant(deriv: &Derivation, pivot: Pivot) -> bool {
    let (p, q) = match pivot {
        Pivot::A => (deriv.a * deriv.f, deriv.b * deriv.e),
        Pivot::D => (deriv.d * deriv.e, deriv.c * deriv.f),
        Pivot::None => return false,
    };
    near_zero(p - q, p.abs().max(q.abs()))
}

/// Branch of the case table that applies to `deriv`.
pub fn classify(deriv: &Derivation) -> (FixedPointCase, Pivot) {
    let trace_zero = is_trace_zero(deriv);
    if !is_singular(deriv) {
        let case = if trace_zero {
            FixedPointCase::InvertibleTraceZero
        } else {
            FixedPointCase::InvertibleTraceNonzero
        };
        return (case, Pivot::None);
    }
    let pivot = if deriv.a == 0.0 && deriv.d == 0.0 {
        return (FixedPointCase::Degenerate, Pivot::None);
    } else if deriv.a.abs() >= deriv.d.abs() {
        Pivot::A
    } else {
        Pivot::D
    };
    let case = match (trace_zero, is_resonant(deriv, pivot)) {
        (false, false) => FixedPointCase::SingularGeneric,
        (true, false) => FixedPointCase::SingularTraceZero,
        (false, true) => FixedPointCase::SingularResonant,
        (true, true) => FixedPointCase::SingularTraceZeroResonant,
    };
    (case, pivot)
}

/// The set stated by the case table for the given branch.
pub fn stated_fixed_set(deriv: &Derivation, case: FixedPointCase, pivot: Pivot) -> Option<Subspace> {
    let Derivation { a, b, c, d, e, f } = *deriv;
    let tr = a + d;
    // direction of ker A inside the (x, y) plane, and the z-solve numerator
    let (line, z_num) = match pivot {
        Pivot::A => (Vector3::new(-b, a, 0.0), b * e - a * f),
        Pivot::D => (Vector3::new(d, -c, 0.0), c * f - d * e),
        Pivot::None => (Vector3::zeros(), 0.0),
    };
    let set = match case {
        FixedPointCase::InvertibleTraceNonzero => Subspace::zero(),
        FixedPointCase::InvertibleTraceZero | FixedPointCase::SingularTraceZero => {
            Subspace::span(&[Vector3::z()])
        }
        FixedPointCase::SingularGeneric => {
            Subspace::span(&[Vector3::new(line[0], line[1], z_num / tr)])
        }
        FixedPointCase::SingularResonant => Subspace::span(&[line]),
        FixedPointCase::SingularTraceZeroResonant => Subspace::span(&[line, Vector3::z()]),
        FixedPointCase::Degenerate => return None,
    };
    Some(set)
}

pub fn fixed_points(deriv: &Derivation) -> FixedPointReport {
    let d = deriv.matrix();
    let (subspace, elim) =
        Subspace::kernel_with_report(&DMatrix::from_column_slice(3, 3, d.as_slice()));
    let (case, pivot) = classify(deriv);
    FixedPointReport {
        subspace,
        case,
        pivot,
        stated: stated_fixed_set(deriv, case, pivot),
        near_rank_deficient: elim.near_deficient(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(deriv: Derivation, case: FixedPointCase, dim: usize) -> FixedPointReport {
        let r = fixed_points(&deriv);
        assert_eq!(r.case, case, "{deriv:?}");
        assert_eq!(r.subspace.dim(), dim, "{deriv:?}");
        let stated = r.stated.as_ref().unwrap();
        assert!(stated.same_as(&r.subspace), "{deriv:?}");
        for v in r.subspace.basis() {
            assert!((deriv.matrix() * v).norm() < 1e-9);
        }
        r
    }

    #[test]
    fn invertible_branches() {
        let r = check(Derivation::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0), FixedPointCase::InvertibleTraceNonzero, 0);
        assert_eq!(r.pivot, Pivot::None);
        let r = check(Derivation::new(1.0, 0.0, 0.0, -1.0, 0.3, 0.2), FixedPointCase::InvertibleTraceZero, 1);
        assert!(r.subspace.contains(&Vector3::z()));
    }

    #[test]
    fn singular_generic_example() {
        let r = check(Derivation::new(1.0, 0.0, 0.0, 0.0, 0.0, 1.0), FixedPointCase::SingularGeneric, 1);
        assert!(r.subspace.contains(&Vector3::new(0.0, 1.0, -1.0)));
    }

    #[test]
    fn singular_branches() {
        // a = 1, b = 2, c = 1, d = 2 → det 0, trace 3
        check(Derivation::new(1.0, 2.0, 1.0, 2.0, 1.0, 0.5), FixedPointCase::SingularGeneric, 1);
        check(Derivation::new(1.0, 2.0, 1.0, 2.0, 1.0, 2.0), FixedPointCase::SingularResonant, 1);
        // a = 1, d = -1, bc = -1
        check(Derivation::new(1.0, 1.0, -1.0, -1.0, 1.0, 0.0), FixedPointCase::SingularTraceZero, 1);
        check(Derivation::new(1.0, 1.0, -1.0, -1.0, 1.0, 1.0), FixedPointCase::SingularTraceZeroResonant, 2);
    }

    #[test]
    fn mirrored_pivot_when_a_vanishes() {
        // a = 0, d = 2, b·c = 0
        let r = check(Derivation::new(0.0, 0.0, 3.0, 2.0, 1.0, 1.0), FixedPointCase::SingularGeneric, 1);
        assert_eq!(r.pivot, Pivot::D);
        // e = cf/d
        let r = check(Derivation::new(0.0, 0.0, 2.0, 2.0, 1.0, 1.0), FixedPointCase::SingularResonant, 1);
        assert_eq!(r.pivot, Pivot::D);
    }

    #[test]
    fn degenerate_falls_back_to_nullspace() {
        let r = fixed_points(&Derivation::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0));
        assert_eq!(r.case, FixedPointCase::Degenerate);
        assert!(r.stated.is_none());
        assert_eq!(r.subspace.dim(), 2);
        let r = fixed_points(&Derivation::default());
        assert_eq!(r.subspace.dim(), 3);
    }
}
