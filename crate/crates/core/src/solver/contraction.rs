//! Sampled check of the operator inequality
//!
//! ```text
//! ‖Tu − Tv‖ ≤ ‖Tu − v‖ − k·ψ(‖u − v‖)
//! ```
//!
//! (φ = identity, ψ₁ = kψ), together with the pointwise source condition
//! `λ|f(s,u) − f(s,v)| ≤ λ|f(s,u)| − λ·sup|w| − ψ(sup|u − v|)`, which is
//! evaluated for both `w = v` and `w = u`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::altering::AlteringDistance;
use super::grid::{sup_norm_distance, GridFunction};
use super::operator::HammersteinOperator;
use super::source::SourceFunction;
use crate::error::{Error, Result};
use crate::green::{bound_k, ModelParams};
use crate::quad::QuadSpec;

/// Slack allowed before a sampled inequality counts as violated.
pub const VIOLATION_SLACK: f64 = 1e-9;

/// Which function's sup norm enters the source condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupReading {
    /// `λ·sup|v|`, as the condition is stated.
    SupV,
    /// `λ·sup|u|`, as the worked example evaluates it.
    SupU,
}

#[derive(Debug, Clone)]
pub struct ContractionOptions {
    pub samples: usize,
    pub seed: u64,
    pub psi: AlteringDistance,
    /// Node values are drawn from `[−R, R]` (or `[0, R]` when `nonnegative`).
    pub bound_r: f64,
    pub nonnegative: bool,
    pub grid_n: usize,
    pub reading: SupReading,
    pub quad: QuadSpec,
}

impl Default for ContractionOptions {
    fn default() -> Self {
        ContractionOptions {
            samples: 1000,
            seed: 42,
            psi: AlteringDistance::ClampedPower,
            bound_r: 20.0,
            nonnegative: false,
            grid_n: 64,
            reading: SupReading::SupV,
            quad: QuadSpec::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    pub samples: usize,
    /// Pairs skipped because `f` was undefined on them.
    pub inapplicable: usize,
    pub violations: usize,
    /// Smallest `RHS − LHS` seen; negative values are violations.
    pub worst_margin: f64,
    pub k: f64,
    pub psi: AlteringDistance,
    pub reading: SupReading,
    pub source_violations_sup_v: usize,
    pub source_violations_sup_u: usize,
}

impl ContractionReport {
    /// Source-condition violations under the selected reading.
    pub fn source_violations(&self) -> usize {
        match self.reading {
            SupReading::SupV => self.source_violations_sup_v,
            SupReading::SupU => self.source_violations_sup_u,
        }
    }
}

/// `‖Tu − v‖ − k·ψ(‖u − v‖) − ‖Tu − Tv‖` for one pair.
pub fn pair_margin(
    op: &HammersteinOperator,
    f: &SourceFunction,
    psi: &AlteringDistance,
    u: &GridFunction,
    v: &GridFunction,
) -> Result<f64> {
    let k = bound_k(op.params());
    let tu = op.apply(f, u)?;
    let tv = op.apply(f, v)?;
    let lhs = sup_norm_distance(&tu, &tv)?;
    let rhs = sup_norm_distance(&tu, v)? - k * psi.eval(sup_norm_distance(u, v)?);
    Ok(rhs - lhs)
}

/// Whether the pointwise source condition fails at some node, for each reading.
fn source_condition_fails(
    lambda: f64,
    f: &SourceFunction,
    psi: &AlteringDistance,
    u: &GridFunction,
    v: &GridFunction,
) -> Result<(bool, bool)> {
    let control = psi.eval(sup_norm_distance(u, v)?);
    let (sup_u, sup_v) = (u.sup_norm(), v.sup_norm());
    let mut fails = (false, false);
    for ((s, ui), &vi) in u.nodes().zip(v.values()) {
        let fu = f.eval(s, ui)?;
        let fv = f.eval(s, vi)?;
        let lhs = lambda * (fu - fv).abs();
        let base = lambda * fu.abs() - control;
        fails.0 |= lhs > base - lambda * sup_v + VIOLATION_SLACK;
        fails.1 |= lhs > base - lambda * sup_u + VIOLATION_SLACK;
    }
    Ok(fails)
}

/// Draws `samples` random pairs and counts violations of both inequalities.
pub fn check_contraction(
    p: &ModelParams,
    f: &SourceFunction,
    opts: &ContractionOptions,
) -> Result<ContractionReport> {
    if opts.samples == 0 {
        return Err(Error::domain("sample_count must be at least 1"));
    }
    if !(opts.bound_r.is_finite() && opts.bound_r > 0.0) {
        return Err(Error::domain(format!(
            "R must be positive, got {}",
            opts.bound_r
        )));
    }
    let op = HammersteinOperator::new(p, opts.grid_n, &opts.quad)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let lo = if opts.nonnegative { 0.0 } else { -opts.bound_r };
    let draw = |rng: &mut ChaCha8Rng| {
        GridFunction::new(
            (0..=opts.grid_n)
                .map(|_| rng.gen_range(lo..=opts.bound_r))
                .collect(),
        )
    };

    let mut report = ContractionReport {
        samples: opts.samples,
        inapplicable: 0,
        violations: 0,
        worst_margin: f64::INFINITY,
        k: bound_k(p),
        psi: opts.psi.clone(),
        reading: opts.reading,
        source_violations_sup_v: 0,
        source_violations_sup_u: 0,
    };
    for _ in 0..opts.samples {
        let u = draw(&mut rng)?;
        let v = draw(&mut rng)?;
        let margin = match pair_margin(&op, f, &opts.psi, &u, &v) {
            Ok(m) => m,
            Err(Error::SourceDomain { .. }) => {
                report.inapplicable += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        report.worst_margin = report.worst_margin.min(margin);
        if margin < -VIOLATION_SLACK {
            report.violations += 1;
        }
        let (fail_v, fail_u) = source_condition_fails(p.lambda(), f, &opts.psi, &u, &v)?;
        report.source_violations_sup_v += fail_v as usize;
        report.source_violations_sup_u += fail_u as usize;
    }
    Ok(report)
}
