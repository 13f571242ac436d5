use std::path::PathBuf;

use thiserror::Error;

use crate::solver::SolveResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of a numeric routine.
    #[error("domain error: {0}")]
    Domain(String),

    /// Model parameters violate an admissibility condition.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An integrand produced a non-finite sample.
    #[error("integrand is not finite at s = {s}: {value}")]
    NonFiniteIntegrand { s: f64, value: f64 },

    /// The source function was evaluated outside its domain.
    #[error("source function {source_fn} undefined at t = {t}, u = {u}{}", grid_index.map(|i| format!(" (grid point {i})")).unwrap_or_default())]
    SourceDomain {
        source_fn: String,
        t: f64,
        u: f64,
        grid_index: Option<usize>,
    },

    #[error("grid mismatch: {left} vs {right} intervals")]
    GridMismatch { left: usize, right: usize },

    /// Picard iteration ran out of iterations; the partial result is kept
    /// so the increment history can be inspected.
    #[error("no convergence after {} iterations (last increment {:e})", .0.iterations, .0.final_step)]
    NotConverged(Box<SolveResult>),

    #[error("config error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: msg.into(),
        }
    }
}
