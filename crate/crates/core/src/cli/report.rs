//! The `analyze` report and its JSON and text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::number::{human, to_json_sig17};
use super::problem::{Problem, ProblemSpec};
use crate::catalog::{homomorphism_check, Homomorphism, Kernel};
use crate::linalg::Subspace;
use crate::observability::{analyze_with, Distinguisher, Finding, FixedPointReport, PaperDecision, Verdict};

/// Outcome of replaying the witness pair through the flow.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub t_max: f64,
    pub samples: usize,
    /// First sample time at which the pair separated; `None` means it held.
    pub separated_at: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub spec: ProblemSpec,
    pub homomorphism: Homomorphism,
    /// Sampled homomorphism-law check (seeded from `options.seed`).
    pub homomorphism_law_holds: bool,
    pub fixed_points: FixedPointReport,
    pub kernel: Kernel,
    pub unobservable: Subspace,
    pub oracle: Verdict,
    pub paper: PaperDecision,
    pub covered: bool,
    pub findings: Vec<Finding>,
    pub witness_check: Option<WitnessCheck>,
}

/// Number of random pairs used for the in-report homomorphism check.
const LAW_TRIALS: usize = 256;

pub fn build_report(problem: &Problem) -> Report {
    let opts = &problem.spec.options;
    let analysis = analyze_with(&problem.derivation, &problem.homomorphism, &opts.grid());
    let witness_check = analysis.oracle.witness.map(|w| {
        let separated_at = Distinguisher::new(
            &problem.derivation,
            &problem.homomorphism,
            opts.t_max,
            opts.samples,
        )
        .map(|d| d.with_tolerance(opts.tol).first_separation(&w.p, &w.q))
        .expect("options validated");
        WitnessCheck {
            t_max: opts.t_max,
            samples: opts.samples,
            separated_at,
        }
    });
    Report {
        spec: problem.spec.clone(),
        homomorphism: problem.homomorphism.clone(),
        homomorphism_law_holds: homomorphism_check(&problem.homomorphism, LAW_TRIALS, opts.seed),
        fixed_points: analysis.fixed_points,
        kernel: analysis.kernel,
        unobservable: analysis.oracle.unobservable.clone(),
        covered: analysis.paper.covered(),
        oracle: analysis.oracle,
        paper: analysis.paper,
        findings: analysis.findings,
        witness_check,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        to_json_sig17(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let d = &self.spec.derivation;
        let vec3 = |v: &nalgebra::Vector3<f64>| {
            format!("({}, {}, {})", human(v[0]), human(v[1]), human(v[2]))
        };
        let subspace = |sub: &Subspace| {
            if sub.dim() == 0 {
                "{0}".to_string()
            } else {
                let b: Vec<String> = sub.basis().iter().map(vec3).collect();
                format!("span{{{}}}", b.join(", "))
            }
        };
        let _ = writeln!(
            s,
            "derivation: a={} b={} c={} d={} e={} f={}",
            human(d.a),
            human(d.b),
            human(d.c),
            human(d.d),
            human(d.e),
            human(d.f)
        );
        let rows: Vec<String> = self
            .homomorphism
            .map
            .iter()
            .map(|r| format!("[{}, {}, {}]", human(r[0]), human(r[1]), human(r[2])))
            .collect();
        let _ = writeln!(
            s,
            "homomorphism: onto {} rows {} (law holds: {})",
            self.homomorphism.target,
            rows.join(" "),
            self.homomorphism_law_holds
        );
        let _ = writeln!(
            s,
            "fixed points: dim {} {} case {:?}",
            self.fixed_points.subspace.dim(),
            subspace(&self.fixed_points.subspace),
            self.fixed_points.case
        );
        let _ = writeln!(
            s,
            "kernel: dim {} {} case {}",
            self.kernel.subspace.dim(),
            subspace(&self.kernel.subspace),
            self.kernel.case.label()
        );
        let _ = writeln!(
            s,
            "unobservable set I: dim {} {}",
            self.unobservable.dim(),
            subspace(&self.unobservable)
        );
        let _ = writeln!(
            s,
            "Fix ∩ K: dim {} {}",
            self.oracle.fix_cap_kernel.dim(),
            subspace(&self.oracle.fix_cap_kernel)
        );
        let _ = writeln!(s, "verdict (rank oracle): {}", self.oracle.status.as_str());
        let _ = writeln!(
            s,
            "verdict (published conditions): {} [{:?}]",
            self.paper.status.map_or("not covered", |st| st.as_str()),
            self.paper.rule
        );
        if self.oracle.near_rank_deficient {
            let _ = writeln!(s, "warning: a rank decision is within 10x of its tolerance");
        }
        if !self.oracle.flow_cross_check {
            let _ = writeln!(s, "warning: flow cross-check of I failed");
        }
        if let (Some(w), Some(c)) = (&self.oracle.witness, &self.witness_check) {
            let _ = writeln!(
                s,
                "witness: p = {} q = {} ({})",
                vec3(&w.p.to_vector()),
                vec3(&w.q.to_vector()),
                match c.separated_at {
                    None => format!("outputs agree at {} times in [0, {}]", c.samples, human(c.t_max)),
                    Some(t) => format!("SEPARATED at t = {}", human(t)),
                }
            );
        }
        for f in &self.findings {
            let _ = writeln!(s, "finding {:?}: {}", f.kind, f.detail);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::problem::load_problem;

    fn diagonal_problem() -> Problem {
        load_problem(
            r#"{"derivation": {"a": 1, "d": 1, "e": 1},
                "homomorphism": {"target": "H1", "coefficients": [1, 0, 0, 1]}}"#,
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let r = build_report(&diagonal_problem());
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn json_is_deterministic() {
        assert_eq!(build_report(&diagonal_problem()).to_json(), build_report(&diagonal_problem()).to_json());
    }

    #[test]
    fn text_mentions_both_verdicts() {
        let t = build_report(&diagonal_problem()).to_text();
        assert!(t.contains("verdict (rank oracle): Observable"));
        assert!(t.contains("verdict (published conditions): Observable"));
    }
}
