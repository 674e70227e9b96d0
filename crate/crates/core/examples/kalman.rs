//! The Euclidean rank test on a train: position is observable, velocity is not.

use heisobs::observability::{kalman_rank, observability_matrix};
use nalgebra::DMatrix;

fn main() {
    let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    for (name, c) in [("position", [1.0, 0.0]), ("velocity", [0.0, 1.0])] {
        let c = DMatrix::from_row_slice(1, 2, &c);
        println!("{name} output:{}rank {}", observability_matrix(&a, &c).unwrap(), kalman_rank(&a, &c).unwrap());
    }
}
