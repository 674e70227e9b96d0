//! Sylvester coefficients of `exp(tA)` on the real, complex and confluent branches.

use heisobs::flow::{exp2, sylvester_coeffs, Derivation};
use heisobs::oracle::{reference_expm2, rel_frobenius};

fn main() {
    let cases = [
        ("real pair", Derivation::new(1.0, 2.0, 0.5, -1.0, 0.0, 0.0)),
        ("complex pair", Derivation::new(0.2, -1.0, 1.0, 0.2, 0.0, 0.0)),
        ("confluent", Derivation::new(0.7, 1.0, 0.0, 0.7, 0.0, 0.0)),
        ("near-confluent", Derivation::new(0.7, 0.0, 0.0, 0.7 + 1e-6, 0.0, 0.0)),
    ];
    let t = 1.5;
    for (name, d) in cases {
        let sc = sylvester_coeffs(&d, t);
        let err = rel_frobenius(&exp2(&d, t), &reference_expm2(&(d.block() * t)));
        println!(
            "{name:>15}: α = {:.6}, β = {:.6}, s0 = {:.6}, s1 = {:.6}, confluent = {}, error vs reference {err:.1e}",
            sc.alpha, sc.beta, sc.s0, sc.s1, sc.confluent
        );
    }
}
