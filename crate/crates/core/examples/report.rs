//! Build the `analyze` report for a JSON problem and print both renderings.

use heisobs::cli::{build_report, load_problem};

fn main() {
    let problem = load_problem(
        r#"{"derivation": {"a": 0.5, "c": 1, "d": 0.5},
            "homomorphism": {"target": "H1", "coefficients": [1, 0, 0, 0]},
            "options": {"seed": 7}}"#,
    )
    .unwrap();
    let report = build_report(&problem);
    print!("{}", report.to_text());
    println!();
    print!("{}", report.to_json());
}
