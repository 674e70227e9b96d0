//! Both verdicts, the findings they produce, and witness replay.

use heisobs::catalog::{build_homomorphism, SubgroupId};
use heisobs::flow::Derivation;
use heisobs::observability::{analyze, distinguish};

fn main() {
    let yz = build_homomorphism(SubgroupId::H1, &[1.0, 0.0, 0.0, 1.0]).unwrap();
    let y_only = build_homomorphism(SubgroupId::H1, &[1.0, 0.0, 0.0, 0.0]).unwrap();
    let cases = [
        ("diagonal, e = 1", Derivation::new(1.0, 0.0, 0.0, 1.0, 1.0, 0.0), &yz),
        ("trace zero, e = 1", Derivation::new(1.0, 0.0, 0.0, -1.0, 1.0, 0.0), &yz),
        ("e = c = 0", Derivation::new(1.0, 0.5, 0.0, -0.3, 0.0, 0.8), &yz),
        ("K = {y = 0}, c ≠ 0", Derivation::new(0.5, 0.0, 1.0, 0.5, 0.0, 0.0), &y_only),
    ];
    for (name, d, h) in cases {
        let a = analyze(&d, h);
        println!("{name}");
        println!("  oracle:    {} (dim I = {})", a.oracle.status.as_str(), a.oracle.unobservable.dim());
        println!(
            "  published: {} via {:?}",
            a.paper.status.map_or("not covered", |s| s.as_str()),
            a.paper.rule
        );
        if let Some(w) = a.oracle.witness {
            let sep = distinguish(&d, h, &w.p, &w.q, 4.0, 64).unwrap();
            println!("  witness {} ~ {}: separated at {:?}", w.p, w.q, sep);
        }
        for f in &a.findings {
            println!("  finding {:?}: {}", f.kind, f.detail);
        }
    }
}
