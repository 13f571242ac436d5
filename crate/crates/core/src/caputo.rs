//! L1-type discretisations of the Caputo derivative, used to check a computed
//! solution against the differential form of the problem:
//!
//! ```text
//! D^α u + λ f(t, u) = 0,   u'(0) = 0,   β D^{α−1} u(1) + u(η) = 0
//! ```
//!
//! This is a verifier, not a solver: the schemes are low order and only
//! need to corroborate what the integral-equation route produced.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::ModelParams;
use crate::solver::{GridFunction, SourceFunction};
use crate::specfun::gamma;

/// Smallest grid accepted by the difference operators.
pub const MIN_INTERVALS: usize = 4;

/// Interior window on which the differential residual is measured. The true
/// solution has `u'' ~ t^{α−2}` at the origin, so edge residuals never settle.
pub const ODE_WINDOW: (f64, f64) = (0.1, 0.9);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `sup |D^α u(t_i) + λ f(t_i, u_i)|` over grid points in [`ODE_WINDOW`].
    pub ode_residual_sup: f64,
    /// `|u'(0)|` from a second-order one-sided difference.
    pub bc1_residual: f64,
    /// `|β D^{α−1} u(1) + u(η)|`.
    pub bc2_residual: f64,
    pub grid_n: usize,
}

fn check_grid(u: &GridFunction) -> Result<()> {
    if u.n() < MIN_INTERVALS {
        return Err(Error::domain(format!(
            "Caputo differences need at least {MIN_INTERVALS} intervals, got {}",
            u.n()
        )));
    }
    Ok(())
}

/// L1 sum for order `mu ∈ (0,1)` on samples with spacing `h`; zero at the first node.
fn l1(values: &[f64], h: f64, mu: f64) -> Result<Vec<f64>> {
    let scale = h.powf(-mu) / gamma(2.0 - mu)?;
    let sigma = 1.0 - mu;
    let b: Vec<f64> = (0..values.len())
        .map(|j| ((j + 1) as f64).powf(sigma) - (j as f64).powf(sigma))
        .collect();
    let out = (0..values.len())
        .map(|m| {
            let mut acc = 0.0;
            for j in 0..m {
                acc += b[j] * (values[m - j] - values[m - j - 1]);
            }
            scale * acc
        })
        .collect();
    Ok(out)
}

/// First derivative: central differences inside, second-order one-sided at
/// both ends.
fn gradient(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len() - 1;
    let mut d = vec![0.0; n + 1];
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for i in 1..n {
        d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    d[n] = (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * h);
    d
}

/// Caputo derivative of order `mu ∈ (0,1)` by the L1 scheme.
pub fn caputo_deriv(u: &GridFunction, mu: f64) -> Result<GridFunction> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::domain(format!("order must lie in (0,1), got {mu}")));
    }
    check_grid(u)?;
    GridFunction::new(l1(u.values(), u.h(), mu)?)
}

/// Caputo derivative of order `alpha ∈ (1,2]`.
///
/// For `alpha < 2` this is the L1 scheme of order `alpha − 1` applied to the
/// differenced `u'`, which is `O(h^{3−α})` and exact on quadratics. The first
/// two nodes are filled with the value at `t_2`. At `alpha = 2` it is the
/// plain second difference.
pub fn caputo_deriv2(u: &GridFunction, alpha: f64) -> Result<GridFunction> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::domain(format!(
            "order must lie in (1,2], got {alpha}"
        )));
    }
    check_grid(u)?;
    let (v, h) = (u.values(), u.h());
    let n = u.n();
    let out = if alpha == 2.0 {
        let h2 = h * h;
        let mut d = vec![0.0; n + 1];
        for i in 1..n {
            d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
        }
        d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
        d[n] = (2.0 * v[n] - 5.0 * v[n - 1] + 4.0 * v[n - 2] - v[n - 3]) / h2;
        d
    } else {
        let mut d = l1(&gradient(v, h), h, alpha - 1.0)?;
        d[0] = d[2];
        d[1] = d[2];
        d
    };
    GridFunction::new(out)
}

/// Residuals of the differential equation and both boundary conditions.
pub fn verify_solution(
    p: &ModelParams,
    f: &SourceFunction,
    u: &GridFunction,
) -> Result<ResidualReport> {
    check_grid(u)?;
    let alpha = p.alpha();
    let (v, h, n) = (u.values(), u.h(), u.n());

    let d = caputo_deriv2(u, alpha)?;
    let mut ode = 0.0_f64;
    for (i, (t, ui)) in u.nodes().enumerate() {
        if t < ODE_WINDOW.0 - 1e-12 || t > ODE_WINDOW.1 + 1e-12 {
            continue;
        }
        let fv = f.eval(t, ui).map_err(|e| match e {
            Error::SourceDomain {
                source_fn, t, u, ..
            } => Error::SourceDomain {
                source_fn,
                t,
                u,
                grid_index: Some(i),
            },
            other => other,
        })?;
        ode = ode.max((d.values()[i] + p.lambda() * fv).abs());
    }

    let bc1 = ((-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)).abs();
    let d_at_one = if alpha == 2.0 {
        (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * h)
    } else {
        *caputo_deriv(u, alpha - 1.0)?.values().last().unwrap()
    };
    let bc2 = (p.beta() * d_at_one + u.interpolate(p.eta())).abs();

    Ok(ResidualReport {
        ode_residual_sup: ode,
        bc1_residual: bc1,
        bc2_residual: bc2,
        grid_n: n,
    })
}
