//! Invariants over random inputs.

use nalgebra::Vector3;
use proptest::prelude::*;

use heisobs::catalog::{build_homomorphism, in_kernel, kernel, Homomorphism, SubgroupId};
use heisobs::flow::{flow, Derivation};
use heisobs::group::GroupElement;
use heisobs::observability::{decide_oracle, distinguish, fix_cap_kernel, Status};

fn entry() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn derivation() -> impl Strategy<Value = Derivation> {
    prop::array::uniform6(entry()).prop_map(Derivation::from_array)
}

/// Small integers make exact rank deficiencies common.
fn lattice_derivation() -> impl Strategy<Value = Derivation> {
    prop::array::uniform6(-1i32..=1).prop_map(|p| Derivation::from_array(p.map(f64::from)))
}

fn point() -> impl Strategy<Value = GroupElement> {
    prop::array::uniform3(entry()).prop_map(GroupElement::from)
}

fn homomorphism() -> impl Strategy<Value = Homomorphism> {
    let tags = prop::sample::select(vec!["H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "H9"]);
    (tags, prop::collection::vec(-1i32..=1, 4), 1i32..=2, -2i32..=-1).prop_map(|(tag, c, ah, bh)| {
        let id = SubgroupId::parse(tag, Some((ah as f64, bh as f64))).unwrap();
        let coeffs: Vec<f64> = c[..id.coefficient_count()].iter().map(|&v| v as f64).collect();
        build_homomorphism(id, &coeffs).unwrap()
    })
}

/// Product in exponential coordinates: `X * Y = X + Y + ½[X, Y]`.
fn exp_chart_mul(g: &GroupElement, h: &GroupElement) -> GroupElement {
    GroupElement::new(g.x + h.x, g.y + h.y, g.z + h.z + 0.5 * (g.y * h.x - h.y * g.x))
}

fn close(a: &GroupElement, b: &GroupElement, tol: f64) -> bool {
    let scale = a.to_vector().norm().max(b.to_vector().norm()).max(1.0);
    a.max_abs_diff(b) <= tol * scale
}

proptest! {
    #[test]
    fn one_parameter_group(d in derivation(), t in -2.0..2.0f64, s in -2.0..2.0f64, g in point()) {
        prop_assert!(close(&flow(&d, t + s, &g), &flow(&d, t, &flow(&d, s, &g)), 1e-9));
    }

    #[test]
    fn flow_is_an_automorphism_of_the_exponential_chart(
        d in derivation(), t in -2.0..2.0f64, g in point(), h in point()
    ) {
        let lhs = flow(&d, t, &exp_chart_mul(&g, &h));
        let rhs = exp_chart_mul(&flow(&d, t, &g), &flow(&d, t, &h));
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn kernel_basis_maps_to_identity(h in homomorphism()) {
        for v in kernel(&h).subspace.basis() {
            prop_assert!(in_kernel(&h, &GroupElement::from_vector(&v)));
        }
    }

    #[test]
    fn unobservable_set_is_flow_invariant_inside_the_kernel(
        d in lattice_derivation(), h in homomorphism(), t in -2.0..2.0f64
    ) {
        let v = decide_oracle(&d, &h);
        prop_assert!(v.flow_cross_check);
        for b in v.unobservable.basis() {
            let moved = flow(&d, t, &GroupElement::from_vector(&b));
            prop_assert!(v.unobservable.contains(&moved.to_vector()));
            prop_assert!(in_kernel(&h, &moved));
        }
    }

    #[test]
    fn witnesses_are_sound(d in lattice_derivation(), h in homomorphism()) {
        let v = decide_oracle(&d, &h);
        prop_assert_eq!(v.witness.is_some(), v.status == Status::NotLocallyObservable);
        if let Some(w) = v.witness {
            prop_assert_ne!(w.p, w.q);
            prop_assert_eq!(distinguish(&d, &h, &w.p, &w.q, 4.0, 64).unwrap(), None);
        }
    }

    #[test]
    fn never_locally_observable_only_on_catalog_inputs(d in lattice_derivation(), h in homomorphism()) {
        let v = decide_oracle(&d, &h);
        prop_assert_ne!(v.status, Status::LocallyObservableOnly);
        let (fix_k, _) = fix_cap_kernel(&d, &h);
        prop_assert!(v.unobservable.contains_subspace(&fix_k));
    }

    #[test]
    fn fixed_points_are_zeros_of_the_field(d in lattice_derivation()) {
        let r = heisobs::observability::fixed_points(&d);
        for v in r.subspace.basis() {
            prop_assert!((d.matrix() * v).norm() < 1e-9);
        }
        let rank = 3 - r.subspace.dim();
        let m = nalgebra::DMatrix::from_column_slice(3, 3, d.matrix().as_slice());
        prop_assert_eq!(rank, heisobs::linalg::rank(&m, heisobs::linalg::RANK_TOL));
    }
}

#[test]
fn coordinate_product_is_not_preserved_by_the_flow() {
    // e = 1 only; the centre of the coordinate product sits in x, the flow moves z
    let d = Derivation::new(0.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    let (g, h) = (GroupElement::new(0.0, 1.0, 0.0), GroupElement::new(0.0, 0.0, 1.0));
    let lhs = flow(&d, 1.0, &heisobs::group::mul(&g, &h));
    let rhs = heisobs::group::mul(&flow(&d, 1.0, &g), &flow(&d, 1.0, &h));
    assert_eq!(lhs, GroupElement::new(1.0, 1.0, 2.0));
    assert_eq!(rhs, GroupElement::new(1.0, 1.0, 1.0));
    let _ = Vector3::<f64>::zeros();
}
