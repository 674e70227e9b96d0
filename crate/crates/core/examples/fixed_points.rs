//! Fixed points of the flow, one derivation per branch of the case table.

use heisobs::flow::Derivation;
use heisobs::observability::fixed_points;

fn main() {
    let examples = [
        Derivation::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0),
        Derivation::new(1.0, 0.0, 0.0, -1.0, 0.3, 0.2),
        Derivation::new(1.0, 2.0, 1.0, 2.0, 1.0, 0.5),
        Derivation::new(1.0, 1.0, -1.0, -1.0, 1.0, 0.0),
        Derivation::new(1.0, 2.0, 1.0, 2.0, 1.0, 2.0),
        Derivation::new(1.0, 1.0, -1.0, -1.0, 1.0, 1.0),
        Derivation::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0),
    ];
    for d in examples {
        let r = fixed_points(&d);
        let agrees = r.stated.as_ref().map(|s| s.same_as(&r.subspace));
        println!(
            "{:?}: {:?} (pivot {:?}), dim Fix = {}, basis {:?}, matches table: {:?}",
            d.to_array(),
            r.case,
            r.pivot,
            r.subspace.dim(),
            r.subspace.basis().iter().map(|v| [v[0], v[1], v[2]]).collect::<Vec<_>>(),
            agrees
        );
    }
}
