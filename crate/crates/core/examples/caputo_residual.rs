//! Convergence of the discrete Caputo derivatives on power functions.
//!
//! cargo run --example caputo_residual

use thermostat::caputo::caputo_deriv2;
use thermostat::specfun::gamma;
use thermostat::GridFunction;

fn main() -> thermostat::Result<()> {
    let alpha = 1.5;
    for p in [2.0, 3.0] {
        let c = gamma(p + 1.0)? / gamma(p + 1.0 - alpha)?;
        println!("u = t^{p}, alpha = {alpha}");
        let mut prev: Option<f64> = None;
        for n in [64, 128, 256, 512, 1024] {
            let u = GridFunction::from_fn(n, |t| t.powf(p))?;
            let d = caputo_deriv2(&u, alpha)?;
            let err = d
                .nodes()
                .filter(|(t, _)| (0.1..=0.9).contains(t))
                .map(|(t, v)| (v - c * t.powf(p - alpha)).abs())
                .fold(0.0, f64::max);
            match prev {
                _ if err < 1e-12 => println!("  n = {n:>4}  error {err:.3e}  (exact to roundoff)"),
                Some(e) => println!(
                    "  n = {n:>4}  error {err:.3e}  order {:.3}",
                    (e / err).log2()
                ),
                _ => println!("  n = {n:>4}  error {err:.3e}"),
            }
            prev = Some(err);
        }
    }
    Ok(())
}
