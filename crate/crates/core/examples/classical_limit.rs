//! α = 2 turns the problem into u'' + λ f = 0. With f = a + b·u the solution is
//! a shifted cosine; compare it against Picard and the differential residuals.
//!
//! cargo run --example classical_limit

use thermostat::caputo::verify_solution;
use thermostat::solver::{picard_solve, PicardOptions};
use thermostat::{GridFunction, ModelParams, SourceFunction};

fn main() -> thermostat::Result<()> {
    let (a, b, beta, eta, lambda) = (1.0, 0.01, 1.0, 0.5, 1.0);
    let p = ModelParams::new(2.0, beta, eta, lambda)?;
    let f = SourceFunction::affine(a, b)?;
    let r = picard_solve(&p, &f, GridFunction::zeros(256)?, &PicardOptions::default())?;

    let w = (lambda * b).sqrt();
    let amp = (a / b) / ((w * eta).cos() - beta * w * w.sin());
    let err = r
        .solution
        .nodes()
        .map(|(t, u)| (u - (amp * (w * t).cos() - a / b)).abs())
        .fold(0.0, f64::max);
    let res = verify_solution(&p, &f, &r.solution)?;
    println!("iterations {}  sup error vs cosine {err:.3e}", r.iterations);
    println!(
        "residuals  ode {:.3e}  u'(0) {:.3e}  nonlocal {:.3e}",
        res.ode_residual_sup, res.bc1_residual, res.bc2_residual
    );
    Ok(())
}
