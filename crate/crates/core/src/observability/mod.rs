//! Fixed points, the unobservable set and observability verdicts.

mod decide;
mod fixed;
mod kalman;
mod jtest;

pub use decide::{
    decide_oracle, decide_paper, decide_paper_with, distinguish, findings, fix_cap_kernel,
    flow_stays_in_kernel, unobservable_subspace, witness_for, Distinguisher, Finding, FindingKind,
    PaperDecision, PaperRule, Status, Verdict, Witness, CROSS_CHECK_TIMES, SEPARATION_TOL,
    WITNESS_BASE,
};
pub use fixed::{
    classify, fixed_points, is_singular, is_trace_zero, stated_fixed_set, FixedPointCase,
    FixedPointReport, Pivot, BRANCH_TOL,
};
pub use kalman::{kalman_rank, observability_matrix};
pub use jtest::{j_test_report, IClaim, JTestReport, TimeGrid, ZERO_TOL};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{kernel, Homomorphism, Kernel};
use crate::flow::Derivation;

#[derive(Debug, Error, PartialEq)]
pub enum ObservabilityError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("need at least 2 sample times, got {0}")]
    TooFewSamples(usize),
    #[error("time horizon must be positive and finite, got {0}")]
    BadHorizon(f64),
    #[error("time grid must be nonempty with a positive half-width")]
    BadGrid,
}

/// Everything the analysis pipeline computes for one `(D, h)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub fixed_points: FixedPointReport,
    pub kernel: Kernel,
    pub oracle: Verdict,
    pub paper: PaperDecision,
    pub findings: Vec<Finding>,
}

pub fn analyze(deriv: &Derivation, h: &Homomorphism) -> Analysis {
    analyze_with(deriv, h, &TimeGrid::default())
}

pub fn analyze_with(deriv: &Derivation, h: &Homomorphism, grid: &TimeGrid) -> Analysis {
    let k = kernel(h);
    let oracle = decide_oracle(deriv, h);
    let paper = decide_paper_with(deriv, h, &k, grid);
    let findings = findings(deriv, h, &k, &oracle, &paper);
    Analysis {
        fixed_points: fixed_points(deriv),
        kernel: k,
        oracle,
        paper,
        findings,
    }
}
