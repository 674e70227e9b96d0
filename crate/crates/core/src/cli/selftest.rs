//! Built-in invariant suites at reduced trial counts.

use std::fmt::Write as _;

use nalgebra::{DMatrix, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{homomorphism_check, in_kernel, kernel};
use crate::flow::{exp2, flow, flow_matrix, rk4_flow, Derivation};
use crate::group::{self, inverse, GroupElement};
use crate::observability::{
    decide_oracle, fixed_points, kalman_rank, Distinguisher, FixedPointCase, Status,
};
use crate::oracle::{reference_expm2, reference_expm3, rel_frobenius};
use crate::sampling::{draw_branch, random_derivation, random_homomorphism, random_point};

const TAGS: [&str; 9] = ["H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "H9"];

/// Replaceable pieces, so a broken implementation can be fed to the suites.
#[derive(Clone, Copy)]
pub struct SelftestHooks {
    pub mul: fn(&GroupElement, &GroupElement) -> GroupElement,
}

impl Default for SelftestHooks {
    fn default() -> Self {
        Self { mul: group::mul }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    /// First failure, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestSummary {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failure.is_none())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            match &s.failure {
                None => {
                    let _ = writeln!(out, "PASS {:<22} {} trials", s.name, s.trials);
                }
                Some(why) => {
                    let _ = writeln!(out, "FAIL {:<22} {why}", s.name);
                }
            }
        }
        let _ = writeln!(
            out,
            "selftest seed {}: {}",
            self.seed,
            if self.passed() { "pass" } else { "FAIL" }
        );
        out
    }
}

type Check = Result<(), String>;

fn close(a: &GroupElement, b: &GroupElement, tol: f64) -> bool {
    let scale = a.to_vector().norm().max(b.to_vector().norm()).max(1.0);
    a.max_abs_diff(b) <= tol * scale
}

fn group_law(rng: &mut ChaCha8Rng, hooks: &SelftestHooks, n: usize) -> Check {
    let mul = hooks.mul;
    let got = mul(&GroupElement::new(1.0, 2.0, 3.0), &GroupElement::new(4.0, 5.0, 6.0));
    if got != GroupElement::new(17.0, 7.0, 9.0) {
        return Err(format!("(1,2,3)·(4,5,6) = {got}, expected (17, 7, 9)"));
    }
    for _ in 0..n {
        let (g, h, k) = (random_point(rng, 5.0), random_point(rng, 5.0), random_point(rng, 5.0));
        if !close(&mul(&mul(&g, &h), &k), &mul(&g, &mul(&h, &k)), 1e-12) {
            return Err(format!("associativity fails at {g}, {h}, {k}"));
        }
        let e = GroupElement::IDENTITY;
        if !close(&mul(&g, &inverse(&g)), &e, 1e-12) || !close(&mul(&inverse(&g), &g), &e, 1e-12) {
            return Err(format!("g·g⁻¹ ≠ e at {g}"));
        }
    }
    Ok(())
}

fn sylvester(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for i in 0..n {
        let mut d = random_derivation(rng, 2.0);
        if i % 4 == 0 {
            // near-confluent pair: eigenvalues a and a + 1e-6
            d.b = 0.0;
            d.d = d.a + 1e-6;
        }
        let t = rng.random_range(-2.0..=2.0);
        let a: Matrix2<f64> = d.block() * t;
        let err = rel_frobenius(&exp2(&d, t), &reference_expm2(&a));
        if err > 1e-9 {
            return Err(format!("exp2 error {err:e} for {d:?}, t = {t}"));
        }
    }
    Ok(())
}

fn flow_vs_rk4(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for _ in 0..n {
        let d = random_derivation(rng, 2.0);
        let t = rng.random_range(-2.0..=2.0);
        let g = random_point(rng, 2.0);
        let closed = flow(&d, t, &g);
        let rk = rk4_flow(&d, t, &g, 1000).map_err(|e| e.to_string())?;
        if !close(&closed, &rk, 1e-6) {
            return Err(format!("closed form {closed} vs RK4 {rk} for {d:?}, t = {t}"));
        }
    }
    Ok(())
}

fn one_parameter_group(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for _ in 0..n {
        let d = random_derivation(rng, 2.0);
        let (t, s) = (rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        let g = random_point(rng, 2.0);
        let lhs = flow(&d, t + s, &g);
        let rhs = flow(&d, t, &flow(&d, s, &g));
        if !close(&lhs, &rhs, 1e-9) {
            return Err(format!("flow(t+s) ≠ flow(t)∘flow(s) for {d:?}"));
        }
    }
    Ok(())
}

fn flow_matrix_vs_reference(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for _ in 0..n {
        let d = random_derivation(rng, 2.0);
        let t = rng.random_range(-2.0..=2.0);
        let err = rel_frobenius(&flow_matrix(&d, t), &reference_expm3(&(d.matrix() * t)));
        if err > 1e-9 {
            return Err(format!("flow matrix error {err:e} for {d:?}, t = {t}"));
        }
    }
    Ok(())
}

fn homomorphisms(rng: &mut ChaCha8Rng, hooks: &SelftestHooks, n: usize) -> Check {
    let mul = hooks.mul;
    for i in 0..n {
        let tag = TAGS[i % TAGS.len()];
        let h = random_homomorphism(rng, tag);
        if !homomorphism_check(&h, 16, rng.random()) {
            return Err(format!("{tag} map fails the homomorphism law"));
        }
        let (g, g2) = (random_point(rng, 3.0), random_point(rng, 3.0));
        if !close(&h.apply(&mul(&g, &g2)), &mul(&h.apply(&g), &h.apply(&g2)), 1e-12) {
            return Err(format!("h(g·g') ≠ h(g)·h(g') for {tag} under the supplied product"));
        }
        for v in kernel(&h).subspace.basis() {
            if !in_kernel(&h, &GroupElement::from_vector(&v)) {
                return Err(format!("kernel vector {v:?} of {tag} is not mapped to e"));
            }
        }
    }
    Ok(())
}

fn fixed_point_table(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for case in FixedPointCase::ALL_LABELLED {
        for _ in 0..n {
            let d = draw_branch(rng, case);
            let r = fixed_points(&d);
            let ok = r.case == case && r.stated.as_ref().is_some_and(|s| s.same_as(&r.subspace));
            if !ok {
                return Err(format!("{case:?}: nullspace disagrees with the table for {d:?}"));
            }
        }
    }
    Ok(())
}

fn witnesses(rng: &mut ChaCha8Rng, n: usize) -> Check {
    for i in 0..n {
        let d: Derivation = random_derivation(rng, 1.0);
        let h = random_homomorphism(rng, TAGS[i % TAGS.len()]);
        let v = decide_oracle(&d, &h);
        if (v.unobservable.dim() == 0) != (v.status == Status::Observable) {
            return Err(format!("dim I = 0 and Observable disagree for {d:?}"));
        }
        let dist = Distinguisher::new(&d, &h, 4.0, 64).map_err(|e| e.to_string())?;
        if let Some(w) = v.witness {
            if let Some(t) = dist.first_separation(&w.p, &w.q) {
                return Err(format!("witness separates at t = {t} for {d:?}"));
            }
        } else {
            let (p, q) = (random_point(rng, 2.0), random_point(rng, 2.0));
            if dist.first_separation(&p, &q).is_none() {
                return Err(format!("observable pair fails to separate {p} and {q} for {d:?}"));
            }
        }
    }
    Ok(())
}

fn kalman() -> Check {
    let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let pos = kalman_rank(&a, &DMatrix::from_row_slice(1, 2, &[1.0, 0.0])).map_err(|e| e.to_string())?;
    let vel = kalman_rank(&a, &DMatrix::from_row_slice(1, 2, &[0.0, 1.0])).map_err(|e| e.to_string())?;
    if (pos, vel) != (2, 1) {
        return Err(format!("train ranks ({pos}, {vel}), expected (2, 1)"));
    }
    Ok(())
}

pub fn run_selftest(seed: u64, hooks: &SelftestHooks) -> SelftestSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suites = Vec::new();
    let mut record = |name, trials, res: Check| {
        suites.push(SuiteResult {
            name,
            trials,
            failure: res.err(),
        })
    };
    record("group-law", 100, group_law(&mut rng, hooks, 100));
    record("sylvester", 100, sylvester(&mut rng, 100));
    record("flow-vs-rk4", 50, flow_vs_rk4(&mut rng, 50));
    record("one-parameter-group", 100, one_parameter_group(&mut rng, 100));
    record("flow-matrix", 100, flow_matrix_vs_reference(&mut rng, 100));
    record("homomorphisms", 90, homomorphisms(&mut rng, hooks, 90));
    record("fixed-point-table", 6 * 20, fixed_point_table(&mut rng, 20));
    record("witnesses", 90, witnesses(&mut rng, 90));
    record("kalman", 1, kalman());
    SelftestSummary { seed, suites }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrong_sign(g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement::new(g.x + h.x - g.y * h.z, g.y + h.y, g.z + h.z)
    }

    #[test]
    fn default_build_passes() {
        let s = run_selftest(0, &SelftestHooks::default());
        assert!(s.passed(), "{}", s.to_text());
    }

    #[test]
    fn wrong_sign_product_fails() {
        let s = run_selftest(0, &SelftestHooks { mul: wrong_sign });
        assert!(!s.passed());
        assert!(s.suites[0].failure.is_some());
    }

    #[test]
    fn same_seed_same_summary() {
        let hooks = SelftestHooks::default();
        assert_eq!(run_selftest(9, &hooks).to_text(), run_selftest(9, &hooks).to_text());
    }
}
