//! Observability verdicts.
//!
//! The oracle computes the unobservable set `I` as the largest `D`-invariant
//! subspace inside `K = ker h`, i.e. `ker [C; CD; CD²]`, and `Fix ∩ K` as
//! `ker [D; C]`. The published procedure walks the sufficient conditions in
//! order and says "not covered" when none applies.

use nalgebra::{DMatrix, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::fixed::fixed_points;
use super::jtest::{j_test_report, IClaim, TimeGrid};
use super::ObservabilityError;
use crate::catalog::{kernel, Homomorphism, Kernel, KernelCase, SubgroupId};
use crate::flow::{flow_matrix, Derivation};
use crate::group::{mul, GroupElement};
use crate::linalg::Subspace;

/// Relative output-separation threshold, scaled by `max(1, state norms)`.
pub const SEPARATION_TOL: f64 = 1e-9;

/// Times at which `I` is cross-checked against the flow.
pub const CROSS_CHECK_TIMES: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];

/// Base point of witness pairs. With `y = 0` the product `p·k` is `p + k`.
pub const WITNESS_BASE: GroupElement = GroupElement::new(1.0, 0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Observable,
    NotLocallyObservable,
    LocallyObservableOnly,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Observable => "Observable",
            Status::NotLocallyObservable => "NotLocallyObservable",
            Status::LocallyObservableOnly => "LocallyObservableOnly",
        }
    }
}

/// Two distinct states with identical outputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub p: GroupElement,
    pub q: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    /// The unobservable set `I`.
    pub unobservable: Subspace,
    pub fix_cap_kernel: Subspace,
    pub witness: Option<Witness>,
    /// A rank decision sat within 10× of its tolerance.
    pub near_rank_deficient: bool,
    /// Every basis vector of `I` stayed in `K` along the flow at the check times.
    pub flow_cross_check: bool,
}

fn stacked(rows: &[Matrix3<f64>]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(3 * rows.len(), 3);
    for (k, block) in rows.iter().enumerate() {
        m.view_mut((3 * k, 0), (3, 3)).copy_from(block);
    }
    m
}

fn unobservable_with_report(deriv: &Derivation, h: &Homomorphism) -> (Subspace, bool) {
    let c = h.matrix();
    let d = deriv.matrix();
    let cd = c * d;
    let (sub, elim) = Subspace::kernel_with_report(&stacked(&[c, cd, cd * d]));
    (sub, elim.near_deficient())
}

/// `I = ker [C; CD; CD²]`.
pub fn unobservable_subspace(deriv: &Derivation, h: &Homomorphism) -> Subspace {
    unobservable_with_report(deriv, h).0
}

/// `h(flow(t, v)) = e` for each basis vector `v` of `set` at [`CROSS_CHECK_TIMES`].
pub fn flow_stays_in_kernel(deriv: &Derivation, h: &Homomorphism, set: &Subspace) -> bool {
    let c = h.matrix();
    CROSS_CHECK_TIMES.iter().all(|&t| {
        let l = flow_matrix(deriv, t);
        set.basis().iter().all(|v| {
            let moved = l * v;
            (c * moved).norm() <= 1e-8 * moved.norm().max(1.0)
        })
    })
}

pub fn fix_cap_kernel(deriv: &Derivation, h: &Homomorphism) -> (Subspace, bool) {
    let (sub, elim) = Subspace::kernel_with_report(&stacked(&[deriv.matrix(), h.matrix()]));
    (sub, elim.near_deficient())
}

pub fn witness_for(k: &Vector3<f64>) -> Witness {
    let p = WITNESS_BASE;
    Witness {
        p,
        q: mul(&p, &GroupElement::from_vector(k)),
    }
}

pub fn decide_oracle(deriv: &Derivation, h: &Homomorphism) -> Verdict {
    let (unobservable, warn_i) = unobservable_with_report(deriv, h);
    let (fix_cap_kernel, warn_f) = fix_cap_kernel(deriv, h);
    let status = if unobservable.dim() >= 1 {
        Status::NotLocallyObservable
    } else if fix_cap_kernel.dim() >= 1 {
        Status::LocallyObservableOnly
    } else {
        Status::Observable
    };
    let witness = unobservable.basis().first().map(witness_for);
    let flow_cross_check = flow_stays_in_kernel(deriv, h, &unobservable);
    Verdict {
        status,
        unobservable,
        fix_cap_kernel,
        witness,
        near_rank_deficient: warn_i || warn_f,
        flow_cross_check,
    }
}

/// The published condition that decided (or failed to decide) an instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum PaperRule {
    /// Zero homomorphism, `K` is the whole group.
    TrivialHomomorphism,
    /// `β = γ = 0` in the degenerate-kernel table.
    FullGroupKernel,
    /// `β ≠ 0, γ = 0`: `K = {y = 0}`, claimed `I = K`.
    YZeroKernel,
    /// `β = 0, γ ≠ 0`: decided by the `J = I1 ∩ I2` test on `(f1, f2)`.
    ZZeroJTest { j_empty: bool, claim: IClaim },
    /// `B` invertible with `a + d ≠ 0` and `e ≠ 0`.
    InvertibleB,
    NotCovered { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperDecision {
    #[serde(flatten)]
    pub rule: PaperRule,
    /// `None` when no published condition applies.
    pub status: Option<Status>,
}

impl PaperDecision {
    pub fn covered(&self) -> bool {
        self.status.is_some()
    }

    fn not_covered(reason: impl Into<String>) -> Self {
        Self {
            rule: PaperRule::NotCovered {
                reason: reason.into(),
            },
            status: None,
        }
    }
}

pub fn decide_paper(deriv: &Derivation, h: &Homomorphism) -> PaperDecision {
    decide_paper_with(deriv, h, &kernel(h), &TimeGrid::default())
}

pub fn decide_paper_with(
    deriv: &Derivation,
    h: &Homomorphism,
    k: &Kernel,
    grid: &TimeGrid,
) -> PaperDecision {
    if h.is_trivial() {
        return PaperDecision {
            rule: PaperRule::TrivialHomomorphism,
            status: Some(Status::NotLocallyObservable),
        };
    }
    match k.case {
        KernelCase::FullGroup => PaperDecision {
            rule: PaperRule::FullGroupKernel,
            status: Some(Status::NotLocallyObservable),
        },
        KernelCase::YZero => PaperDecision {
            rule: PaperRule::YZeroKernel,
            status: Some(Status::NotLocallyObservable),
        },
        KernelCase::ZZero => {
            let report = match j_test_report(deriv, grid) {
                Ok(r) => r,
                Err(e) => return PaperDecision::not_covered(e.to_string()),
            };
            let status = match report.claim {
                IClaim::NotDiscrete => Status::NotLocallyObservable,
                IClaim::Discrete => {
                    // I = {0} as claimed; global observability needs Fix ∩ K = {e}.
                    let fix = fixed_points(deriv).subspace;
                    if fix.intersection(&k.subspace).dim() == 0 {
                        Status::Observable
                    } else {
                        Status::LocallyObservableOnly
                    }
                }
            };
            PaperDecision {
                rule: PaperRule::ZZeroJTest {
                    j_empty: report.j_empty,
                    claim: report.claim,
                },
                status: Some(status),
            }
        }
        KernelCase::Mixed => {
            PaperDecision::not_covered("kernel {b1*y = -g1*z} with both coefficients nonzero")
        }
        KernelCase::XAxis => {
            if deriv.trace_a() != 0.0 && deriv.e != 0.0 {
                PaperDecision {
                    rule: PaperRule::InvertibleB,
                    status: Some(Status::Observable),
                }
            } else {
                let mut failed = Vec::new();
                if deriv.trace_a() == 0.0 {
                    failed.push("a+d = 0");
                }
                if deriv.e == 0.0 {
                    failed.push("e = 0");
                }
                PaperDecision::not_covered(format!(
                    "B invertible but {}",
                    failed.join(" and ")
                ))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    /// Covered by a published condition, but the oracle disagrees.
    StatusMismatch,
    /// `B` invertible, `a+d ≠ 0 ∧ e ≠ 0` fails, yet the pair is observable.
    HypothesisNotNecessary,
    /// `B` invertible, `c = 0`, yet the pair is observable.
    ConclusionConditionNotNecessary,
    /// `B` invertible, `c ≠ 0`, yet the pair is not observable.
    ConclusionConditionInsufficient,
    /// `K = {y = 0}` but `I ≠ K`.
    UnobservableSetNotKernel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub oracle: Status,
    pub paper: Option<Status>,
    pub detail: String,
}

pub fn findings(
    deriv: &Derivation,
    h: &Homomorphism,
    k: &Kernel,
    oracle: &Verdict,
    paper: &PaperDecision,
) -> Vec<Finding> {
    let mut out = Vec::new();
    let mut push = |kind, detail: String| {
        out.push(Finding {
            kind,
            oracle: oracle.status,
            paper: paper.status,
            detail,
        })
    };
    if let Some(p) = paper.status {
        if p != oracle.status {
            push(
                FindingKind::StatusMismatch,
                format!(
                    "published rule {:?} gives {}, rank oracle gives {} (dim I = {})",
                    paper.rule,
                    p.as_str(),
                    oracle.status.as_str(),
                    oracle.unobservable.dim()
                ),
            );
        }
    }
    let observable = oracle.status == Status::Observable;
    if k.case == KernelCase::XAxis {
        if observable && !(deriv.trace_a() != 0.0 && deriv.e != 0.0) {
            push(
                FindingKind::HypothesisNotNecessary,
                format!(
                    "observable with a+d = {}, e = {}, c = {}",
                    deriv.trace_a(),
                    deriv.e,
                    deriv.c
                ),
            );
        }
        let via = if matches!(h.target, SubgroupId::H2) {
            " (onto H2)"
        } else {
            ""
        };
        if observable && deriv.c == 0.0 {
            push(
                FindingKind::ConclusionConditionNotNecessary,
                format!("observable with c = 0, e = {}{via}", deriv.e),
            );
        }
        if !observable && deriv.c != 0.0 {
            push(
                FindingKind::ConclusionConditionInsufficient,
                format!("c = {} but status {}{via}", deriv.c, oracle.status.as_str()),
            );
        }
    }
    if k.case == KernelCase::YZero && !oracle.unobservable.same_as(&k.subspace) {
        push(
            FindingKind::UnobservableSetNotKernel,
            format!(
                "dim I = {} but dim K = {} (c = {})",
                oracle.unobservable.dim(),
                k.subspace.dim(),
                deriv.c
            ),
        );
    }
    out
}

/// Output comparison over a fixed grid of sample times in `[0, t_max]`, with
/// the flow matrices precomputed.
pub struct Distinguisher {
    times: Vec<f64>,
    flows: Vec<Matrix3<f64>>,
    output: Matrix3<f64>,
    tol: f64,
}

impl Distinguisher {
    pub fn new(
        deriv: &Derivation,
        h: &Homomorphism,
        t_max: f64,
        samples: usize,
    ) -> Result<Self, ObservabilityError> {
        if samples < 2 {
            return Err(ObservabilityError::TooFewSamples(samples));
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(ObservabilityError::BadHorizon(t_max));
        }
        let times: Vec<f64> = (0..samples)
            .map(|i| t_max * i as f64 / (samples - 1) as f64)
            .collect();
        let flows = times.iter().map(|&t| flow_matrix(deriv, t)).collect();
        Ok(Self {
            times,
            flows,
            output: h.matrix(),
            tol: SEPARATION_TOL,
        })
    }

    /// Replace the relative separation tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// First sample time at which the outputs of `p` and `q` differ.
    pub fn first_separation(&self, p: &GroupElement, q: &GroupElement) -> Option<f64> {
        let (pv, qv) = (p.to_vector(), q.to_vector());
        self.times
            .iter()
            .zip(&self.flows)
            .find(|(_, l)| {
                let (fp, fq) = (*l * pv, *l * qv);
                let gap = (self.output * fp - self.output * fq).norm();
                gap > self.tol * fp.norm().max(fq.norm()).max(1.0)
            })
            .map(|(t, _)| *t)
    }
}

/// First sampled `t ∈ [0, t_max]` with `h(flow(t, p)) ≠ h(flow(t, q))`.
pub fn distinguish(
    deriv: &Derivation,
    h: &Homomorphism,
    p: &GroupElement,
    q: &GroupElement,
    t_max: f64,
    samples: usize,
) -> Result<Option<f64>, ObservabilityError> {
    Ok(Distinguisher::new(deriv, h, t_max, samples)?.first_separation(p, q))
}
