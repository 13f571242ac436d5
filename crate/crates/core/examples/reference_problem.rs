//! The reference configuration: α = 1.5, β = 0.8, η = 0.5, λ = 3.2 and
//! f(t,u) = ln(3²⁰ + t²) + t³ + 1/(24 − u).
//!
//! f is only defined for u < 24, but λ·f·∫G is about 75 at t = 0, so the first
//! Picard iterate already leaves the domain. This example prints the
//! hypothesis report and shows where the iteration stops.
//!
//! cargo run --example reference_problem

use thermostat::hypotheses::check_all;
use thermostat::solver::{apply_t, picard_solve, PicardOptions};
use thermostat::{GridFunction, ModelParams, QuadSpec, SourceFunction};

fn main() -> thermostat::Result<()> {
    let p = ModelParams::reference();
    let f = SourceFunction::Reference;
    let q = QuadSpec::default();

    let rep = check_all(&p, &f, 20.0, 42, &q)?;
    println!("cond_i value         {:.6}", rep.cond_i.value);
    println!(
        "lambda threshold     {:.6} (lambda = {})",
        rep.lambda_threshold,
        p.lambda()
    );
    println!(
        "cond_iii             integral {:.6} vs bound {:.6} -> {:?}",
        rep.cond_iii.integral.unwrap_or(f64::NAN),
        rep.cond_iii.bound,
        rep.cond_iii.status
    );
    println!("failed conditions    {:?}", rep.failures());

    let u1 = apply_t(&p, &f, &GridFunction::zeros(256)?, &q)?;
    println!(
        "first iterate        min {:.4} max {:.4}",
        u1.min(),
        u1.max()
    );
    match picard_solve(&p, &f, GridFunction::zeros(256)?, &PicardOptions::default()) {
        Ok(r) => println!("converged in {} iterations", r.iterations),
        Err(e) => println!("solve stopped: {e}"),
    }
    Ok(())
}
