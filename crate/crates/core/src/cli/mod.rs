//! The `heisobs` command line: `analyze`, `flow`, `sweep` and `selftest`.
//!
//! [`run`] takes the argument list and two writers and returns the exit
//! code, so every subcommand can be driven in-process.
//!
//! Exit codes: 0 success (whatever the verdict), 1 selftest failure,
//! 2 parse or I/O error, 3 validation error.

mod number;
mod problem;
mod report;
mod selftest;
mod sweep;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::flow::{flow, rk4_flow};
use crate::group::GroupElement;

pub use number::{human, sig17, to_json_sig17};
pub use problem::{load_problem, DerivationSpec, HomomorphismSpec, Options, Problem, ProblemSpec};
pub use report::{build_report, Report, WitnessCheck};
pub use selftest::{run_selftest, SelftestHooks, SelftestSummary, SuiteResult};
pub use sweep::{
    run_sweep, Range, Ranges, SweepRow, SweepSpec, SweepSummary, SweepTable, CSV_HEADER, MAX_POINTS,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Validation(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "heisobs", version, about = "Observability of linear pairs on the Heisenberg group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fixed points, kernel, unobservable set and both verdicts for one spec.
    Analyze {
        spec: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print JSON instead of text on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the flow at one time in closed form and by RK4.
    Flow {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Initial point as `x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// RK4 steps; defaults to `options.steps`.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Evaluate a parameter grid and write one CSV row per point.
    Sweep {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in invariant suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_point(s: &str) -> Result<GroupElement, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Parse(format!("--point wants x,y,z, got `{s}`")));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .parse()
            .map_err(|_| CliError::Parse(format!("bad coordinate `{p}` in --point")))?;
    }
    let g = GroupElement::from(v);
    if !g.is_finite() {
        return Err(CliError::Validation("--point must be finite".into()));
    }
    Ok(g)
}

fn cmd_analyze(
    spec: &Path,
    out: Option<&Path>,
    json: bool,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let problem = load_problem(&read(spec)?)?;
    let report = build_report(&problem);
    let machine = report.to_json();
    if let Some(path) = out {
        write_file(path, &machine)?;
    }
    let text = if json { machine } else { report.to_text() };
    let _ = stdout.write_all(text.as_bytes());
    Ok(0)
}

fn cmd_flow(
    spec: &Path,
    t: f64,
    point: &str,
    steps: Option<usize>,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let problem = load_problem(&read(spec)?)?;
    if !t.is_finite() {
        return Err(CliError::Validation("--t must be finite".into()));
    }
    let g = parse_point(point)?;
    let steps = steps.unwrap_or(problem.spec.options.steps);
    let rk4 = rk4_flow(&problem.derivation, t, &g, steps)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let closed = flow(&problem.derivation, t, &g);
    let diff = closed.max_abs_diff(&rk4);
    let row = |g: &GroupElement| format!("{} {} {}", sig17(g.x), sig17(g.y), sig17(g.z));
    let _ = writeln!(stdout, "t {}", sig17(t));
    let _ = writeln!(stdout, "closed_form {}", row(&closed));
    let _ = writeln!(stdout, "rk4[{steps}] {}", row(&rk4));
    let _ = writeln!(stdout, "max_abs_diff {}", sig17(diff));
    Ok(0)
}

fn cmd_sweep(
    spec: &Path,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let sweep = SweepSpec::parse(&read(spec)?)?;
    let table = run_sweep(&sweep)?;
    let csv = table.to_csv();
    let summary = table.summary().render(&table);
    match out {
        Some(path) => {
            write_file(path, &csv)?;
            let _ = stdout.write_all(summary.as_bytes());
        }
        None => {
            let _ = stdout.write_all(csv.as_bytes());
            let _ = stderr.write_all(summary.as_bytes());
        }
    }
    Ok(0)
}

fn cmd_selftest(seed: u64, stdout: &mut dyn Write) -> i32 {
    let summary = run_selftest(seed, &SelftestHooks::default());
    let _ = stdout.write_all(summary.to_text().as_bytes());
    if summary.passed() {
        0
    } else {
        1
    }
}

/// Parse `args` (including the program name) and run the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { spec, out, json } => cmd_analyze(&spec, out.as_deref(), json, stdout),
        Command::Flow {
            spec,
            t,
            point,
            steps,
        } => cmd_flow(&spec, t, &point, steps, stdout),
        Command::Sweep { spec, out } => cmd_sweep(&spec, out.as_deref(), stdout, stderr),
        Command::Selftest { seed } => Ok(cmd_selftest(seed, stdout)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
