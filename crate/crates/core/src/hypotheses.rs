//! Checks of the sufficient conditions for a unique positive solution, with
//! the numbers behind every verdict.
//!
//! Condition (ii) is a universally quantified inequality; it is only ever
//! sampled here, so a pass means "no counterexample found".

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{bound_k, bound_k1, cond_i_value, wellposedness_margin, ModelParams};
use crate::quad::{integrate, QuadSpec};
use crate::solver::{
    check_contraction, AlteringDistance, ContractionOptions, SourceFunction, SupReading,
};

/// Tolerance for the sampled monotonicity test and the λ threshold comparison.
pub const CHECK_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct HypothesisOptions {
    /// Radius of the cone `{0 ≤ u ≤ R}`.
    pub r: f64,
    pub seed: u64,
    pub quad: QuadSpec,
    /// Pairs drawn for condition (ii).
    pub samples: usize,
    /// Grid resolution of the sampled pairs.
    pub grid_n: usize,
    pub psi: AlteringDistance,
    /// Reading of `sup|·|` that decides the condition (ii) verdict; both
    /// counts are always reported.
    pub reading: SupReading,
    /// Triples drawn for the monotonicity test.
    pub monotone_samples: usize,
    /// Interior points scanned for `f(t, 0) > 0`.
    pub positivity_points: usize,
}

impl Default for HypothesisOptions {
    fn default() -> Self {
        HypothesisOptions {
            r: 20.0,
            seed: 42,
            quad: QuadSpec::default(),
            samples: 1000,
            grid_n: 64,
            psi: AlteringDistance::ClampedPower,
            reading: SupReading::SupV,
            monotone_samples: 1000,
            positivity_points: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evidence {
    pub passed: bool,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CondIiReport {
    pub passed: bool,
    pub samples: usize,
    pub inapplicable: usize,
    /// Violations of the operator inequality `‖Tu−Tv‖ ≤ ‖Tu−v‖ − kψ(‖u−v‖)`.
    pub operator_violations: usize,
    pub worst_margin: f64,
    pub source_violations_sup_v: usize,
    pub source_violations_sup_u: usize,
    pub reading: SupReading,
    pub psi: AlteringDistance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CondIiiStatus {
    Pass,
    Fail,
    /// `f(·, R)` is undefined, so the integral does not exist.
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CondIiiReport {
    pub status: CondIiiStatus,
    /// `∫₀¹ f(s, R) ds`, absent when inapplicable.
    pub integral: Option<f64>,
    /// `R / (λ k₁)`.
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneReport {
    pub passed: bool,
    pub samples: usize,
    /// Triples skipped because `f` was undefined at one of the values.
    pub skipped: usize,
    /// Largest `f(s,u₁) − f(s,u₂)` seen with `u₁ < u₂`.
    pub worst_decrease: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityReport {
    pub passed: bool,
    /// First scanned `t₀` with `f(t₀, 0) > 0`.
    pub t0: Option<f64>,
    pub max_value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    /// `βΓ(α) − (1−η)^{α−1}`, must be positive.
    pub wellposed: Evidence,
    /// `βΓ(α+1) + η^α`, must exceed 1.
    pub cond_i: Evidence,
    pub cond_ii: CondIiReport,
    pub cond_iii: CondIiiReport,
    pub monotone_f: MonotoneReport,
    pub f_positive_somewhere: PositivityReport,
    pub r: f64,
    pub k: f64,
    pub k1: f64,
    pub lambda: f64,
    pub lambda_threshold: f64,
    pub lambda_ok: bool,
}

impl HypothesisReport {
    pub fn all_passed(&self) -> bool {
        self.wellposed.passed
            && self.cond_i.passed
            && self.cond_ii.passed
            && self.cond_iii.status == CondIiiStatus::Pass
            && self.monotone_f.passed
            && self.f_positive_somewhere.passed
            && self.lambda_ok
    }

    /// Names of the conditions that did not pass.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks = [
            (self.wellposed.passed, "wellposed"),
            (self.cond_i.passed, "cond_i"),
            (self.cond_ii.passed, "cond_ii"),
            (self.cond_iii.status == CondIiiStatus::Pass, "cond_iii"),
            (self.monotone_f.passed, "monotone_f"),
            (self.f_positive_somewhere.passed, "f_positive_somewhere"),
            (self.lambda_ok, "lambda_ok"),
        ];
        for (ok, name) in checks {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// [`check_all_with`] using default sampling sizes.
pub fn check_all(
    p: &ModelParams,
    f: &SourceFunction,
    r: f64,
    seed: u64,
    q: &QuadSpec,
) -> Result<HypothesisReport> {
    check_all_with(
        p,
        f,
        &HypothesisOptions {
            r,
            seed,
            quad: *q,
            ..HypothesisOptions::default()
        },
    )
}

pub fn check_all_with(
    p: &ModelParams,
    f: &SourceFunction,
    opts: &HypothesisOptions,
) -> Result<HypothesisReport> {
    let r = opts.r;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain(format!("R must be positive, got {r}")));
    }
    let k = bound_k(p);
    let k1 = bound_k1(p);
    let wp = wellposedness_margin(p.alpha(), p.beta(), p.eta())?;
    let ci = cond_i_value(p);

    let contraction = check_contraction(
        p,
        f,
        &ContractionOptions {
            samples: opts.samples,
            seed: opts.seed,
            psi: opts.psi.clone(),
            bound_r: r,
            nonnegative: true,
            grid_n: opts.grid_n,
            reading: opts.reading,
            quad: opts.quad,
        },
    )?;
    let cond_ii = CondIiReport {
        passed: contraction.inapplicable == 0
            && contraction.violations == 0
            && contraction.source_violations() == 0,
        samples: contraction.samples,
        inapplicable: contraction.inapplicable,
        operator_violations: contraction.violations,
        worst_margin: contraction.worst_margin,
        source_violations_sup_v: contraction.source_violations_sup_v,
        source_violations_sup_u: contraction.source_violations_sup_u,
        reading: contraction.reading,
        psi: contraction.psi,
    };

    let bound = r / (p.lambda() * k1);
    let cond_iii = if f.admits(r) {
        let integral = integrate(0.0, 1.0, |s| f.eval_unchecked(s, r), &opts.quad)?;
        CondIiiReport {
            status: if integral <= bound {
                CondIiiStatus::Pass
            } else {
                CondIiiStatus::Fail
            },
            integral: Some(integral),
            bound,
        }
    } else {
        CondIiiReport {
            status: CondIiiStatus::Inapplicable,
            integral: None,
            bound,
        }
    };

    let lambda_threshold = if k > 0.0 { 1.0 / k } else { f64::INFINITY };
    Ok(HypothesisReport {
        wellposed: Evidence {
            passed: wp > 0.0,
            value: wp,
        },
        cond_i: Evidence {
            passed: ci > 1.0,
            value: ci,
        },
        cond_ii,
        cond_iii,
        monotone_f: sample_monotone(f, r, opts.seed, opts.monotone_samples),
        f_positive_somewhere: scan_positive(f, opts.positivity_points),
        r,
        k,
        k1,
        lambda: p.lambda(),
        lambda_threshold,
        lambda_ok: p.lambda() >= lambda_threshold - CHECK_TOL,
    })
}

fn sample_monotone(f: &SourceFunction, r: f64, seed: u64, samples: usize) -> MonotoneReport {
    // A separate stream so the verdict does not depend on the pair sampler.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d6f_6e6f);
    let mut skipped = 0;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..samples {
        let s = rng.gen_range(0.0..=1.0);
        let a: f64 = rng.gen_range(0.0..=r);
        let b: f64 = rng.gen_range(0.0..=r);
        let (u1, u2) = (a.min(b), a.max(b));
        match (f.eval(s, u1), f.eval(s, u2)) {
            (Ok(f1), Ok(f2)) => worst = worst.max(f1 - f2),
            _ => skipped += 1,
        }
    }
    MonotoneReport {
        passed: skipped < samples && worst <= CHECK_TOL,
        samples,
        skipped,
        worst_decrease: worst,
    }
}

fn scan_positive(f: &SourceFunction, points: usize) -> PositivityReport {
    let mut t0 = None;
    let mut max_value = f64::NEG_INFINITY;
    for i in 1..=points {
        let t = i as f64 / (points + 1) as f64;
        if let Ok(v) = f.eval(t, 0.0) {
            max_value = max_value.max(v);
            if v > 0.0 && t0.is_none() {
                t0 = Some(t);
            }
        }
    }
    PositivityReport {
        passed: t0.is_some(),
        t0,
        max_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex() -> ModelParams {
        ModelParams::new(1.5, 0.8, 0.5, 3.2).unwrap()
    }

    fn quick(r: f64) -> HypothesisOptions {
        HypothesisOptions {
            r,
            samples: 100,
            ..HypothesisOptions::default()
        }
    }

    #[test]
    fn reference_inputs() {
        let rep = check_all_with(&ex(), &SourceFunction::Reference, &quick(20.0)).unwrap();
        assert!(rep.wellposed.passed);
        assert!((rep.cond_i.value - 1.4165).abs() < 2e-3);
        assert!(rep.cond_ii.passed);
        assert!(rep.monotone_f.passed);
        assert!(rep.f_positive_somewhere.passed);
        assert!((rep.lambda_threshold - 3.187_670_171_301_394).abs() < 1e-9);
        assert!(rep.lambda_ok);
        // The logarithm alone integrates to about 21.97, far above R/(λk₁).
        let integral = rep.cond_iii.integral.unwrap();
        assert!(
            (integral - 22.472_245_773_457_79).abs() < 1e-6,
            "{integral}"
        );
        assert!((rep.cond_iii.bound - 3.911_421_483_952_291).abs() < 1e-6);
        assert_eq!(rep.cond_iii.status, CondIiiStatus::Fail);
        assert_eq!(rep.failures(), vec!["cond_iii"]);
    }

    #[test]
    fn lambda_below_threshold() {
        let p = ex().with_lambda(3.0).unwrap();
        let rep = check_all_with(&p, &SourceFunction::Reference, &quick(20.0)).unwrap();
        assert!(!rep.lambda_ok);
    }

    #[test]
    fn zero_source_is_nowhere_positive() {
        let rep = check_all_with(&ex(), &SourceFunction::Constant(0.0), &quick(20.0)).unwrap();
        assert!(!rep.f_positive_somewhere.passed);
        assert_eq!(rep.f_positive_somewhere.t0, None);
    }

    #[test]
    fn radius_beyond_pole_is_inapplicable() {
        let rep = check_all_with(&ex(), &SourceFunction::Reference, &quick(30.0)).unwrap();
        assert_eq!(rep.cond_iii.status, CondIiiStatus::Inapplicable);
        assert_eq!(rep.cond_iii.integral, None);
        assert!(!rep.cond_ii.passed);
        assert!(rep.monotone_f.skipped > 0);
    }

    #[test]
    fn small_affine_source_passes_cond_iii() {
        let p = ModelParams::new(1.5, 0.8, 0.5, 3.2).unwrap();
        let f = SourceFunction::affine(0.01, 0.001).unwrap();
        let rep = check_all_with(&p, &f, &quick(1.0)).unwrap();
        assert_eq!(rep.cond_iii.status, CondIiiStatus::Pass);
        assert!((rep.cond_iii.integral.unwrap() - 0.011).abs() < 1e-14);
    }

    #[test]
    fn threshold_consistency() {
        for lambda in [0.5, 3.0, 3.187_670_171_301_394, 3.2, 10.0] {
            let p = ex().with_lambda(lambda).unwrap();
            let rep = check_all_with(&p, &SourceFunction::Constant(1.0), &quick(5.0)).unwrap();
            assert_eq!(rep.lambda_ok, lambda >= rep.lambda_threshold - CHECK_TOL);
        }
    }

    #[test]
    fn deterministic() {
        let f = SourceFunction::affine(1.0, 0.2).unwrap();
        let a = check_all(&ex(), &f, 4.0, 9, &QuadSpec::default()).unwrap();
        let b = check_all(&ex(), &f, 4.0, 9, &QuadSpec::default()).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn rejects_nonpositive_radius() {
        assert!(check_all_with(&ex(), &SourceFunction::Constant(1.0), &quick(0.0)).is_err());
    }
}
