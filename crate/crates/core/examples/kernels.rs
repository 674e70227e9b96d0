//! Homomorphisms onto each subgroup and the shape of their kernels.

use heisobs::catalog::{build_homomorphism, homomorphism_check, kernel, SubgroupId};

fn main() {
    let families: Vec<(SubgroupId, Vec<f64>)> = vec![
        (SubgroupId::H1, vec![1.0, 0.0, 0.0, 1.0]),
        (SubgroupId::H1, vec![2.0, 0.0, 0.0, 0.0]),
        (SubgroupId::H1, vec![0.0, 1.0, 0.0, 0.0]),
        (SubgroupId::H1, vec![1.0, 2.0, 2.0, 4.0]),
        (SubgroupId::H2, vec![0.0, 0.0, 0.0, 0.0]),
        (SubgroupId::H3, vec![1.0, -1.0]),
        (SubgroupId::H6, vec![0.5, 1.0]),
        (SubgroupId::H7, vec![1.0, 0.0]),
        (SubgroupId::H8 { a_hat: 1.0, b_hat: 2.0 }, vec![1.0, 1.0]),
        (SubgroupId::H9 { a_hat: -1.0, b_hat: 3.0 }, vec![0.0, 2.0]),
    ];
    for (target, coeffs) in families {
        let h = build_homomorphism(target, &coeffs).unwrap();
        let k = kernel(&h);
        println!(
            "{h}; law holds: {}; kernel {} of dim {}",
            homomorphism_check(&h, 100, 0),
            k.case.label(),
            k.subspace.dim()
        );
    }
    match SubgroupId::parse("H8", Some((0.0, 1.0))) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
