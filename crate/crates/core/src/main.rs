use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use thermostat::cli::{self, EXIT_FAILURE, EXIT_OK};
use thermostat::config::ConfigEntries;
use thermostat::{Error, KernelBounds};

#[derive(Parser)]
#[command(
    name = "thermostat",
    version,
    about = "Fractional thermostat boundary value problem solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Solve the boundary value problem and write a CSV and a JSON report.
    Solve(SolveArgs),
    /// Check the one-dimensional relational contraction example.
    Lab {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print the kernel constants for (α, β, η).
    Bounds {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        eta: f64,
    },
}

/// Every flag overrides the config key of the same name.
#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    grid_n: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    max_iter: Option<String>,
    #[arg(long = "R")]
    r: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    panels_per_segment: Option<String>,
    #[arg(long)]
    grading_levels: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    report: Option<String>,
    #[arg(long, value_parser = ["off", "warn", "strict"])]
    check_hypotheses: Option<String>,
    #[arg(long)]
    verify_residual: bool,
}

impl SolveArgs {
    fn entries(self) -> thermostat::Result<ConfigEntries> {
        let mut e = match &self.config {
            Some(path) => ConfigEntries::load(path)?,
            None => ConfigEntries::default(),
        };
        let flags = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("eta", self.eta),
            ("lambda", self.lambda),
            ("f", self.f),
            ("grid_n", self.grid_n),
            ("tol", self.tol),
            ("max_iter", self.max_iter),
            ("R", self.r),
            ("seed", self.seed),
            ("panels_per_segment", self.panels_per_segment),
            ("grading_levels", self.grading_levels),
            ("out", self.out),
            ("report", self.report),
            ("check_hypotheses", self.check_hypotheses),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                e.set(key, v)?;
            }
        }
        if self.verify_residual {
            e.set("verify_residual", "true")?;
        }
        Ok(e)
    }
}

fn solve(args: SolveArgs) -> thermostat::Result<i32> {
    let cfg = args.entries()?.build()?;
    let outcome = cli::run_solve(&cfg)?;
    for m in &outcome.messages {
        eprintln!("warning: {m}");
    }
    if let Some(s) = &outcome.report.solve {
        if s.converged {
            eprintln!(
                "converged in {} iterations; wrote {} and {}",
                s.iterations.unwrap_or(0),
                cfg.out.display(),
                cfg.report.display()
            );
        }
    }
    Ok(outcome.exit_code)
}

fn run(cli: Cli) -> thermostat::Result<i32> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Lab { samples, seed } => {
            let (report, code) = cli::run_lab(samples, seed)?;
            print!("{}", cli::format_lab(&report));
            Ok(code)
        }
        Command::Bounds { alpha, beta, eta } => {
            print!(
                "{}",
                cli::format_bounds(&KernelBounds::compute(alpha, beta, eta)?)
            );
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_FAILURE as u8
            } else {
                0
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            match &e {
                Error::Config { .. } | Error::InvalidParams(_) => eprintln!("error: {e}"),
                _ => eprintln!("thermostat: {e}"),
            }
            ExitCode::from(EXIT_FAILURE as u8)
        }
    }
}
