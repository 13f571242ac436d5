//! Full hypothesis report as JSON for a small affine source.
//!
//! cargo run --example hypotheses

use thermostat::hypotheses::check_all;
use thermostat::{ModelParams, QuadSpec, SourceFunction};

fn main() -> thermostat::Result<()> {
    let p = ModelParams::new(1.5, 0.8, 0.5, 3.2)?;
    let f = SourceFunction::affine(0.05, 0.01)?;
    let rep = check_all(&p, &f, 1.0, 42, &QuadSpec::default())?;
    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    println!("failed conditions: {:?}", rep.failures());
    Ok(())
}
