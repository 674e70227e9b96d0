//! Parameter sweeps over derivation grids.
//!
//! A sweep file gives a range for each of `a..f` (a number, a list, or
//! `{min, max, count}`), one or more homomorphisms and the usual options.
//! Points are visited with `a` outermost and the homomorphism list innermost;
//! rows come back in that order however the work is scheduled.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::number::sig17;
use super::problem::{HomomorphismSpec, Options};
use super::CliError;
use crate::catalog::Homomorphism;
use crate::flow::Derivation;
use crate::observability::{analyze_with, FindingKind, Status};

/// Largest grid a sweep will evaluate.
pub const MAX_POINTS: u64 = 1_000_000;

pub const CSV_HEADER: [&str; 12] = [
    "a",
    "b",
    "c",
    "d",
    "e",
    "f",
    "target",
    "verdict_oracle",
    "verdict_paper",
    "covered",
    "dim_I",
    "dim_fix_cap_K",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Range {
    Fixed(f64),
    List(Vec<f64>),
    Linspace {
        min: f64,
        max: f64,
        /// Defaults to the sweep's `density`.
        #[serde(default)]
        count: Option<usize>,
    },
}

impl Default for Range {
    fn default() -> Self {
        Range::Fixed(0.0)
    }
}

impl Range {
    fn len(&self, density: usize) -> usize {
        match self {
            Range::Fixed(_) => 1,
            Range::List(v) => v.len(),
            Range::Linspace { count, .. } => count.unwrap_or(density),
        }
    }

    fn values(&self, density: usize) -> Vec<f64> {
        match self {
            Range::Fixed(v) => vec![*v],
            Range::List(v) => v.clone(),
            Range::Linspace { min, max, count } => {
                let n = count.unwrap_or(density);
                match n {
                    0 => Vec::new(),
                    1 => vec![*min],
                    _ => (0..n)
                        .map(|i| min + (max - min) * i as f64 / (n - 1) as f64)
                        .collect(),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Ranges {
    pub a: Range,
    pub b: Range,
    pub c: Range,
    pub d: Range,
    pub e: Range,
    pub f: Range,
}

impl Ranges {
    fn all(&self) -> [&Range; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f]
    }
}

fn default_density() -> usize {
    3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub ranges: Ranges,
    /// Point count for `{min, max}` ranges that give none.
    #[serde(default = "default_density")]
    pub density: usize,
    #[serde(default)]
    pub homomorphisms: Vec<HomomorphismSpec>,
    /// Shorthand for a one-element `homomorphisms` list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homomorphism: Option<HomomorphismSpec>,
    #[serde(default)]
    pub options: Options,
}

impl SweepSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    fn homomorphism_specs(&self) -> Vec<&HomomorphismSpec> {
        self.homomorphism.iter().chain(&self.homomorphisms).collect()
    }

    /// Number of rows the sweep would produce, saturating at `u64::MAX`.
    pub fn point_count(&self) -> u64 {
        self.ranges
            .all()
            .iter()
            .map(|r| r.len(self.density) as u64)
            .chain(std::iter::once(self.homomorphism_specs().len() as u64))
            .fold(1u64, |acc, n| acc.saturating_mul(n))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub derivation: Derivation,
    pub target: String,
    pub oracle: Status,
    pub paper: Option<Status>,
    pub dim_i: usize,
    pub dim_fix_cap_k: usize,
    pub findings: Vec<FindingKind>,
}

impl SweepRow {
    pub fn covered(&self) -> bool {
        self.paper.is_some()
    }

    /// Covered by a published condition with a different verdict.
    pub fn disagrees(&self) -> bool {
        self.paper.is_some_and(|p| p != self.oracle)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

fn grid(spec: &SweepSpec) -> Vec<Derivation> {
    let axes: Vec<Vec<f64>> = spec
        .ranges
        .all()
        .iter()
        .map(|r| r.values(spec.density))
        .collect();
    let mut out = vec![[0.0; 6]];
    for (k, axis) in axes.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&v| {
                    let mut q = p;
                    q[k] = v;
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Derivation::from_array).collect()
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable, CliError> {
    let n = spec.point_count();
    if n > MAX_POINTS {
        return Err(CliError::Validation(format!(
            "sweep has {n} points, the cap is {MAX_POINTS}"
        )));
    }
    spec.options.validate()?;
    let homs: Vec<(String, Homomorphism)> = spec
        .homomorphism_specs()
        .into_iter()
        .map(|h| Ok((h.target.clone(), h.build()?)))
        .collect::<Result<_, CliError>>()?;
    let derivs = grid(spec);
    if derivs.iter().any(|d| !d.is_finite()) {
        return Err(CliError::Validation("sweep ranges must be finite".into()));
    }
    let jobs: Vec<(Derivation, usize)> = derivs
        .iter()
        .flat_map(|&d| (0..homs.len()).map(move |i| (d, i)))
        .collect();
    let grid_times = spec.options.grid();
    let rows = jobs
        .par_iter()
        .map(|&(d, i)| {
            let (tag, h) = &homs[i];
            let a = analyze_with(&d, h, &grid_times);
            SweepRow {
                derivation: d,
                target: tag.clone(),
                oracle: a.oracle.status,
                paper: a.paper.status,
                dim_i: a.oracle.unobservable.dim(),
                dim_fix_cap_k: a.oracle.fix_cap_kernel.dim(),
                findings: a.findings.iter().map(|f| f.kind).collect(),
            }
        })
        .collect();
    Ok(SweepTable { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub points: usize,
    pub oracle_counts: BTreeMap<&'static str, usize>,
    pub paper_counts: BTreeMap<&'static str, usize>,
    pub not_covered: usize,
    /// Indices of rows with at least one finding.
    pub discrepancies: Vec<usize>,
}

fn paper_label(p: Option<Status>) -> &'static str {
    p.map_or("NotCovered", |s| s.as_str())
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in &self.rows {
            let mut rec: Vec<String> = r.derivation.to_array().iter().map(|&v| sig17(v)).collect();
            rec.push(r.target.clone());
            rec.push(r.oracle.as_str().into());
            rec.push(paper_label(r.paper).into());
            rec.push(r.covered().to_string());
            rec.push(r.dim_i.to_string());
            rec.push(r.dim_fix_cap_k.to_string());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv writes UTF-8")
    }

    pub fn summary(&self) -> SweepSummary {
        let mut s = SweepSummary {
            points: self.rows.len(),
            oracle_counts: BTreeMap::new(),
            paper_counts: BTreeMap::new(),
            not_covered: 0,
            discrepancies: Vec::new(),
        };
        for (i, r) in self.rows.iter().enumerate() {
            *s.oracle_counts.entry(r.oracle.as_str()).or_default() += 1;
            *s.paper_counts.entry(paper_label(r.paper)).or_default() += 1;
            if !r.covered() {
                s.not_covered += 1;
            }
            if !r.findings.is_empty() {
                s.discrepancies.push(i);
            }
        }
        s
    }
}

impl SweepSummary {
    /// Needs the table again to echo the parameters of each discrepancy.
    pub fn render(&self, table: &SweepTable) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "points: {}", self.points);
        for (k, v) in &self.oracle_counts {
            let _ = writeln!(out, "oracle {k}: {v}");
        }
        for (k, v) in &self.paper_counts {
            let _ = writeln!(out, "published {k}: {v}");
        }
        let _ = writeln!(out, "discrepancies: {}", self.discrepancies.len());
        for &i in &self.discrepancies {
            let r = &table.rows[i];
            let [a, b, c, d, e, f] = r.derivation.to_array();
            let _ = writeln!(
                out,
                "  a={a} b={b} c={c} d={d} e={e} f={f} target={} oracle={} published={} {:?}",
                r.target,
                r.oracle.as_str(),
                paper_label(r.paper),
                r.findings
            );
        }
        out
    }
}
