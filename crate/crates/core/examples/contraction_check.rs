//! Sample random pairs and test ‖Tu − Tv‖ ≤ ‖Tu − v‖ − k·ψ(‖u − v‖).
//!
//! cargo run --example contraction_check

use thermostat::solver::{check_contraction, AlteringDistance, ContractionOptions};
use thermostat::{ModelParams, SourceFunction};

fn main() -> thermostat::Result<()> {
    let p = ModelParams::reference();
    let cases = [
        (
            "reference f, psi = min(t^2,1)",
            SourceFunction::Reference,
            AlteringDistance::ClampedPower,
        ),
        (
            "affine f, psi = t",
            SourceFunction::affine(1.0, 0.5)?,
            AlteringDistance::Identity,
        ),
        (
            "zero f, psi = 100t",
            SourceFunction::Constant(0.0),
            AlteringDistance::power(100.0, 1.0)?,
        ),
    ];
    for (label, f, psi) in cases {
        let r = check_contraction(
            &p,
            &f,
            &ContractionOptions {
                psi,
                ..Default::default()
            },
        )?;
        println!(
            "{label:<32} samples {:>5}  violations {:>5}  inapplicable {:>4}  worst margin {:+.4e}",
            r.samples, r.violations, r.inapplicable, r.worst_margin
        );
    }
    Ok(())
}
