//! Drive a full run from config text and write the CSV and JSON report into a
//! temporary directory.
//!
//! cargo run --example write_outputs

use thermostat::cli::run_solve;
use thermostat::config::ConfigEntries;

fn main() -> thermostat::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut e = ConfigEntries::parse(
        "alpha = 1.8\nbeta = 0.9\neta = 0.3\nlambda = 2.0\nf = affine:0.5,0.1\ngrid_n = 128\n",
    )?;
    e.set("out", dir.path().join("u.csv").display().to_string())?;
    e.set(
        "report",
        dir.path().join("report.json").display().to_string(),
    )?;
    e.set("verify_residual", "true")?;
    let cfg = e.build()?;
    print!("{}", cfg.to_text());
    let outcome = run_solve(&cfg)?;
    println!("exit code {}", outcome.exit_code);
    let csv = std::fs::read_to_string(&cfg.out).unwrap();
    println!("{}", csv.lines().take(3).collect::<Vec<_>>().join("\n"));
    println!(
        "{}",
        std::fs::read_to_string(&cfg.report)
            .unwrap()
            .lines()
            .take(12)
            .collect::<Vec<_>>()
            .join("\n")
    );
    Ok(())
}
