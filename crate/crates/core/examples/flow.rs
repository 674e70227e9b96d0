//! Closed-form flow against fourth-order Runge–Kutta along a trajectory.

use heisobs::flow::{flow_matrix, rk4_flow, trajectory, Derivation};
use heisobs::group::GroupElement;

fn main() {
    let d = Derivation::new(0.3, -1.0, 1.0, 0.3, 1.0, -0.5);
    let g = GroupElement::new(1.0, 0.5, -0.25);
    let times: Vec<f64> = (0..=8).map(|i| -2.0 + 0.5 * i as f64).collect();

    println!("{:>6}  {:>40}  {:>10}", "t", "closed form", "|Δ| RK4");
    for s in trajectory(&d, &g, &times) {
        let rk = rk4_flow(&d, s.t, &g, 1000).unwrap();
        println!("{:>6.2}  {:>40}  {:>10.2e}", s.t, s.point.to_string(), s.point.max_abs_diff(&rk));
    }
    println!("\nL(1) =\n{}", flow_matrix(&d, 1.0));
}
