//! With f ≡ 1 the solution is λ times the row integral of G, known in closed
//! form; Picard converges in one step.
//!
//! cargo run --example constant_source

use thermostat::green::kernel_integral_closed;
use thermostat::solver::{picard_solve, PicardOptions};
use thermostat::{GridFunction, ModelParams, SourceFunction};

fn main() -> thermostat::Result<()> {
    let p = ModelParams::new(1.5, 0.8, 0.5, 3.2)?;
    let r = picard_solve(
        &p,
        &SourceFunction::Constant(1.0),
        GridFunction::zeros(256)?,
        &PicardOptions::default(),
    )?;
    let mut err: f64 = 0.0;
    for (t, u) in r.solution.nodes() {
        err = err.max((u - p.lambda() * kernel_integral_closed(&p, t)?).abs());
    }
    println!("iterations     {}", r.iterations);
    println!(
        "u(0), u(1)     {:.10} {:.10}",
        r.solution.values()[0],
        r.solution.values()[256]
    );
    println!("sup error      {err:.3e}");
    Ok(())
}
