//! Orchestration behind the `thermostat` binary: solve runs with their CSV and
//! JSON outputs, the theorem lab, and the kernel-constant table.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::caputo::{verify_solution, ResidualReport};
use crate::config::{HypothesisMode, RunConfig};
use crate::error::{Error, Result};
use crate::green::KernelBounds;
use crate::hypotheses::{check_all, HypothesisReport};
use crate::lab::{example_verify, LabReport};
use crate::solver::{picard_solve, GridFunction, PicardOptions, SolveResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_HYPOTHESES: i32 = 2;

/// Scalar summary of a solve attempt. Fields that do not apply are `null`
/// in JSON rather than missing.
#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub converged: bool,
    pub iterations: Option<usize>,
    pub final_step: Option<f64>,
    pub fixed_point_residual: Option<f64>,
    pub min_value: Option<f64>,
    pub max_value: Option<f64>,
    pub u_at_one: Option<f64>,
    pub step_history: Vec<f64>,
    pub error: Option<String>,
}

impl SolveSummary {
    fn from_result(r: &SolveResult, error: Option<String>) -> Self {
        let finite = |x: f64| x.is_finite().then_some(x);
        SolveSummary {
            converged: r.converged,
            iterations: Some(r.iterations),
            final_step: finite(r.final_step),
            fixed_point_residual: finite(r.fixed_point_residual),
            min_value: Some(r.solution.min()),
            max_value: Some(r.solution.max()),
            u_at_one: r.solution.values().last().copied(),
            step_history: r.step_history.clone(),
            error,
        }
    }

    fn failed(error: String) -> Self {
        SolveSummary {
            converged: false,
            iterations: None,
            final_step: None,
            fixed_point_residual: None,
            min_value: None,
            max_value: None,
            u_at_one: None,
            step_history: Vec::new(),
            error: Some(error),
        }
    }
}

/// Contents of the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub params: RunConfig,
    pub hypotheses: HypothesisReport,
    /// `null` when strict mode refused to solve.
    pub solve: Option<SolveSummary>,
    /// `null` unless residual verification was requested and a solution exists.
    pub residuals: Option<ResidualReport>,
    pub exit_code: i32,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub exit_code: i32,
    pub report: RunReport,
    pub solution: Option<GridFunction>,
    /// Human-readable notes for stderr.
    pub messages: Vec<String>,
}

/// Computes everything a solve run reports, without touching the filesystem.
pub fn execute_solve(cfg: &RunConfig) -> Result<SolveOutcome> {
    let p = cfg.params()?;
    let mut messages = Vec::new();
    let hypotheses = check_all(&p, &cfg.f, cfg.r, cfg.seed, &cfg.quad)?;
    let failures = hypotheses.failures();
    if !failures.is_empty() && cfg.check_hypotheses != HypothesisMode::Off {
        messages.push(format!("hypotheses not satisfied: {}", failures.join(", ")));
    }
    if cfg.check_hypotheses == HypothesisMode::Strict && !failures.is_empty() {
        return Ok(SolveOutcome {
            exit_code: EXIT_HYPOTHESES,
            report: RunReport {
                params: cfg.clone(),
                hypotheses,
                solve: None,
                residuals: None,
                exit_code: EXIT_HYPOTHESES,
            },
            solution: None,
            messages,
        });
    }

    let opts = PicardOptions {
        tol: cfg.tol,
        max_iter: cfg.max_iter,
        quad: cfg.quad,
    };
    let (summary, solution) =
        match picard_solve(&p, &cfg.f, GridFunction::zeros(cfg.grid_n)?, &opts) {
            Ok(r) => (SolveSummary::from_result(&r, None), Some(r.solution)),
            Err(Error::NotConverged(r)) => {
                let msg = Error::NotConverged(r.clone()).to_string();
                messages.push(msg.clone());
                (SolveSummary::from_result(&r, Some(msg)), None)
            }
            Err(e @ (Error::SourceDomain { .. } | Error::NonFiniteIntegrand { .. })) => {
                messages.push(e.to_string());
                (SolveSummary::failed(e.to_string()), None)
            }
            Err(e) => return Err(e),
        };

    let residuals = match (&solution, cfg.verify_residual) {
        (Some(u), true) => Some(verify_solution(&p, &cfg.f, u)?),
        _ => None,
    };
    let exit_code = if solution.is_some() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    Ok(SolveOutcome {
        exit_code,
        report: RunReport {
            params: cfg.clone(),
            hypotheses,
            solve: Some(summary),
            residuals,
            exit_code,
        },
        solution,
        messages,
    })
}

/// Runs a solve and writes the CSV (on success) and the JSON report.
pub fn run_solve(cfg: &RunConfig) -> Result<SolveOutcome> {
    let outcome = execute_solve(cfg)?;
    if let Some(u) = &outcome.solution {
        write_atomic(&cfg.out, solution_csv(u).as_bytes())?;
    }
    let json = serde_json::to_string_pretty(&outcome.report).expect("report serialises");
    write_atomic(&cfg.report, json.as_bytes())?;
    Ok(outcome)
}

/// `t,u` header plus one row per node, 17 significant digits.
pub fn solution_csv(u: &GridFunction) -> String {
    let mut s = String::from("t,u\n");
    for (t, v) in u.nodes() {
        writeln!(s, "{t:.16e},{v:.16e}").unwrap();
    }
    s
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// Runs the lab check; exit status 0 iff nothing was violated.
pub fn run_lab(samples: usize, seed: u64) -> Result<(LabReport, i32)> {
    let report = example_verify(samples, seed)?;
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    Ok((report, code))
}

pub fn format_lab(r: &LabReport) -> String {
    format!(
        "samples = {}\nseed = {}\nviolations = {}\nworst_margin = {}\norbit_starts = {}\norbit_failures = {}\n",
        r.samples, r.seed, r.violations, r.worst_margin, r.orbit_starts, r.orbit_failures
    )
}

/// `key = value` lines for every kernel constant.
pub fn format_bounds(b: &KernelBounds) -> String {
    let rows = [
        ("cond_i", b.cond_i),
        ("k", b.k),
        ("k1", b.k1),
        ("lambda_threshold", b.lambda_threshold),
        ("sup_integral", b.sup_integral),
        ("inf_integral", b.inf_integral),
        ("wellposedness", b.wellposedness),
    ];
    rows.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}
