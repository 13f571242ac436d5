//! Closed-form kernel constants for a few shapes (α, β, η).
//!
//! cargo run --example bounds

use thermostat::KernelBounds;

fn main() -> thermostat::Result<()> {
    println!(
        "{:>5} {:>5} {:>5} {:>10} {:>10} {:>10} {:>10}",
        "alpha", "beta", "eta", "k", "k1", "1/k", "margin"
    );
    for (alpha, beta, eta) in [
        (1.5, 0.8, 0.5),
        (2.0, 1.0, 0.5),
        (1.2, 1.5, 0.0),
        (1.8, 0.6, 0.9),
    ] {
        let b = KernelBounds::compute(alpha, beta, eta)?;
        println!(
            "{alpha:>5} {beta:>5} {eta:>5} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            b.k, b.k1, b.lambda_threshold, b.wellposedness
        );
    }
    Ok(())
}
