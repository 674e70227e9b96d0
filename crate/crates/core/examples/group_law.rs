//! The coordinate product, inverses and the Lie bracket.

use heisobs::group::{bracket, inverse, mul, AlgebraElement, GroupElement};

fn main() {
    let g = GroupElement::new(1.0, 2.0, 3.0);
    let h = GroupElement::new(4.0, 5.0, 6.0);
    println!("g·h      = {}", mul(&g, &h));
    println!("h·g      = {}", mul(&h, &g));
    println!("g⁻¹      = {}", inverse(&g));
    println!("g·g⁻¹    = {}", mul(&g, &inverse(&g)));

    let comm = mul(&mul(&g, &h), &inverse(&mul(&h, &g)));
    println!("gh(hg)⁻¹ = {comm}");

    let u = AlgebraElement::new(1.0, 0.0, 0.0);
    let v = AlgebraElement::new(0.0, 1.0, 0.0);
    println!("[u, v]   = {:?}", bracket(&u, &v));
}
