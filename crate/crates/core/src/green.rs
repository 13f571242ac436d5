//! The thermostat Green's function and the closed-form quantities built on it.
//!
//! For 1 < α ≤ 2 the kernel is
//!
//! ```text
//! G(t,s) = β + H_η(s) − H_t(s),   H_r(s) = (r−s)^{α−1}/Γ(α) for s ≤ r, 0 otherwise
//! ```
//!
//! and its row integral has the closed form `β + (η^α − t^α)/Γ(α+1)`, which
//! is decreasing in `t`. The extreme values of that integral and the uniform
//! kernel bound `β + η^{α−1}/Γ(α)` drive the solvability threshold `λ ≥ 1/k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::gamma;

/// Bases at or below this magnitude are treated as exact zeros.
const SEAM_EPS: f64 = 1e-15;

/// `base^expo` for `expo > 0`, returning exactly 0 for non-positive bases.
#[inline]
pub(crate) fn seam_pow(base: f64, expo: f64) -> f64 {
    if base <= SEAM_EPS {
        0.0
    } else {
        (expo * base.ln()).exp()
    }
}

/// The problem tuple (α, β, η, λ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    alpha: f64,
    beta: f64,
    eta: f64,
    lambda: f64,
    #[serde(skip)]
    gamma_alpha: f64,
    #[serde(skip)]
    gamma_alpha1: f64,
}

impl ModelParams {
    /// Validates ranges and the wellposedness condition `βΓ(α) > (1−η)^{α−1}`.
    pub fn new(alpha: f64, beta: f64, eta: f64, lambda: f64) -> Result<Self> {
        check_shape(alpha, beta, eta)?;
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParams(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        let margin = wellposedness_margin(alpha, beta, eta)?;
        if margin <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "wellposedness fails: beta*Gamma(alpha) - (1-eta)^(alpha-1) = {margin:e} <= 0"
            )));
        }
        Ok(ModelParams {
            alpha,
            beta,
            eta,
            lambda,
            gamma_alpha: gamma(alpha)?,
            gamma_alpha1: gamma(alpha + 1.0)?,
        })
    }

    /// α = 3/2, β = 4/5, η = 1/2, λ = 3.2.
    pub fn reference() -> Self {
        ModelParams::new(1.5, 0.8, 0.5, 3.2).expect("reference parameters are admissible")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Same kernel, different source multiplier.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        ModelParams::new(self.alpha, self.beta, self.eta, lambda)
    }

    pub fn gamma_alpha(&self) -> f64 {
        self.gamma_alpha
    }

    pub fn gamma_alpha_plus_one(&self) -> f64 {
        self.gamma_alpha1
    }

    /// G(t,s) without range checks. Seams take the `s ≤ ·` branch.
    #[inline]
    pub fn green(&self, t: f64, s: f64) -> f64 {
        let e = self.alpha - 1.0;
        let mut g = self.beta;
        if s <= self.eta {
            g += seam_pow(self.eta - s, e) / self.gamma_alpha;
        }
        if s <= t {
            g -= seam_pow(t - s, e) / self.gamma_alpha;
        }
        g
    }
}

fn check_shape(alpha: f64, beta: f64, eta: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in (1, 2], got {alpha}"
        )));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidParams(format!(
            "beta must be positive, got {beta}"
        )));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParams(format!(
            "eta must lie in [0, 1], got {eta}"
        )));
    }
    Ok(())
}

/// `βΓ(α) − (1−η)^{α−1}`; positive exactly when the kernel is positive on the open square.
pub fn wellposedness_margin(alpha: f64, beta: f64, eta: f64) -> Result<f64> {
    Ok(beta * gamma(alpha)? - seam_pow(1.0 - eta, alpha - 1.0))
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must lie in [0, 1], got {x}")))
    }
}

/// G(t,s) with range checks on `t` and `s`.
pub fn kernel(p: &ModelParams, t: f64, s: f64) -> Result<f64> {
    check_unit("t", t)?;
    check_unit("s", s)?;
    Ok(p.green(t, s))
}

/// Exact row integral `∫₀¹ G(t,s) ds = β + (η^α − t^α)/Γ(α+1)`.
pub fn kernel_integral_closed(p: &ModelParams, t: f64) -> Result<f64> {
    check_unit("t", t)?;
    Ok(row_integral(p, t))
}

fn row_integral(p: &ModelParams, t: f64) -> f64 {
    p.beta + (seam_pow(p.eta, p.alpha) - seam_pow(t, p.alpha)) / p.gamma_alpha1
}

/// `k = β + (η^α − 1)/Γ(α+1)`, the infimum of the row integral (attained at t = 1).
pub fn bound_k(p: &ModelParams) -> f64 {
    row_integral(p, 1.0)
}

/// `k₁ = β + η^{α−1}/Γ(α)`, the uniform kernel bound G(0,0).
pub fn bound_k1(p: &ModelParams) -> f64 {
    p.beta + seam_pow(p.eta, p.alpha - 1.0) / p.gamma_alpha
}

/// Supremum of the row integral, `β + η^α/Γ(α+1)` (attained at t = 0).
pub fn sup_integral(p: &ModelParams) -> f64 {
    row_integral(p, 0.0)
}

/// `βΓ(α+1) + η^α`; exceeds 1 exactly when `k > 0`.
pub fn cond_i_value(p: &ModelParams) -> f64 {
    p.beta * p.gamma_alpha1 + seam_pow(p.eta, p.alpha)
}

/// Every closed-form constant for a kernel shape (α, β, η).
///
/// Unlike [`ModelParams::new`], this does not reject shapes that fail
/// wellposedness; the margin is reported instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelBounds {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub wellposedness: f64,
    pub cond_i: f64,
    pub k: f64,
    pub k1: f64,
    pub lambda_threshold: f64,
    pub sup_integral: f64,
    pub inf_integral: f64,
}

impl KernelBounds {
    pub fn compute(alpha: f64, beta: f64, eta: f64) -> Result<Self> {
        check_shape(alpha, beta, eta)?;
        let ga = gamma(alpha)?;
        let ga1 = gamma(alpha + 1.0)?;
        let eta_a = seam_pow(eta, alpha);
        let k = beta + (eta_a - 1.0) / ga1;
        Ok(KernelBounds {
            alpha,
            beta,
            eta,
            wellposedness: beta * ga - seam_pow(1.0 - eta, alpha - 1.0),
            cond_i: beta * ga1 + eta_a,
            k,
            k1: beta + seam_pow(eta, alpha - 1.0) / ga,
            lambda_threshold: if k > 0.0 { 1.0 / k } else { f64::INFINITY },
            sup_integral: beta + eta_a / ga1,
            inf_integral: k,
        })
    }
}
