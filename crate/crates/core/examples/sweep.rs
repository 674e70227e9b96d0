//! A parameter sweep over invertible coefficient matrices, with the summary
//! of where the two deciders part ways.

use heisobs::cli::{run_sweep, SweepSpec};

fn main() {
    let spec = SweepSpec::parse(
        r#"{"ranges": {"a": [-1, 0, 1], "c": [-1, 0, 1], "d": [-1, 0, 1], "e": [-1, 0, 1]},
            "homomorphisms": [{"target": "H1", "coefficients": [1, 0, 0, 1]},
                              {"target": "H2", "coefficients": [0, 1, 1, 0]}]}"#,
    )
    .unwrap();
    let table = run_sweep(&spec).unwrap();
    let csv = table.to_csv();
    for line in csv.lines().take(4) {
        println!("{line}");
    }
    println!("...\n");
    print!("{}", table.summary().render(&table));
}
