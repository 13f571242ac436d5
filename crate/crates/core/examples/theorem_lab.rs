//! The map Tx = −x on [−2,−1], 0 on [1,2] ∪ {0}: check the contraction
//! inequality on related pairs and follow a few orbits.
//!
//! cargo run --example theorem_lab

use thermostat::lab::{example_map, example_verify, ExamplePoint};

fn main() -> thermostat::Result<()> {
    for x0 in [-1.5, -2.0, 1.3, 0.0] {
        let mut x = ExamplePoint::new(x0)?;
        let mut orbit = vec![x.value()];
        while x.value() != 0.0 {
            x = example_map(x);
            orbit.push(x.value());
        }
        println!("orbit of {x0:>4}: {orbit:?}");
    }
    let r = example_verify(10_000, 42)?;
    println!(
        "{} related pairs, {} violations, worst margin {}",
        r.samples, r.violations, r.worst_margin
    );
    Ok(())
}
