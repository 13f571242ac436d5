use serde::Serialize;

use super::grid::{sup_norm_distance, GridFunction};
use super::operator::HammersteinOperator;
use super::source::SourceFunction;
use crate::error::{Error, Result};
use crate::green::ModelParams;
use crate::quad::QuadSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardOptions {
    /// Stop once the sup-norm increment is at or below this.
    pub tol: f64,
    pub max_iter: usize,
    pub quad: QuadSpec,
}

impl Default for PicardOptions {
    fn default() -> Self {
        PicardOptions {
            tol: 1e-10,
            max_iter: 200,
            quad: QuadSpec::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub solution: GridFunction,
    pub iterations: usize,
    pub converged: bool,
    /// Sup norm of the last increment `‖u_k − u_{k−1}‖`.
    pub final_step: f64,
    /// `‖u − Tu‖∞` for the returned `u`; NaN when `Tu` could not be evaluated.
    pub fixed_point_residual: f64,
    pub step_history: Vec<f64>,
}

/// Iterates `u ← Tu` from `u0` until the increment drops to `tol`.
pub fn picard_solve(
    p: &ModelParams,
    f: &SourceFunction,
    u0: GridFunction,
    opts: &PicardOptions,
) -> Result<SolveResult> {
    let op = HammersteinOperator::new(p, u0.n(), &opts.quad)?;
    picard_iterate(&op, f, u0, opts)
}

/// Same as [`picard_solve`] with a prebuilt operator.
pub fn picard_iterate(
    op: &HammersteinOperator,
    f: &SourceFunction,
    u0: GridFunction,
    opts: &PicardOptions,
) -> Result<SolveResult> {
    if !(opts.tol.is_finite() && opts.tol > 0.0) {
        return Err(Error::domain(format!(
            "tol must be positive, got {}",
            opts.tol
        )));
    }
    if opts.max_iter == 0 {
        return Err(Error::domain("max_iter must be at least 1"));
    }
    let mut u = u0;
    let mut history = Vec::new();
    let mut converged = false;
    while history.len() < opts.max_iter {
        let next = op.apply(f, &u)?;
        let step = sup_norm_distance(&next, &u)?;
        history.push(step);
        u = next;
        if step <= opts.tol {
            converged = true;
            break;
        }
    }
    let residual = match op.apply(f, &u) {
        Ok(tu) => sup_norm_distance(&tu, &u)?,
        Err(Error::SourceDomain { .. }) if !converged => f64::NAN,
        Err(e) => return Err(e),
    };
    let result = SolveResult {
        solution: u,
        iterations: history.len(),
        converged,
        final_step: history.last().copied().unwrap_or(f64::NAN),
        fixed_point_residual: residual,
        step_history: history,
    };
    if converged {
        Ok(result)
    } else {
        Err(Error::NotConverged(Box::new(result)))
    }
}
