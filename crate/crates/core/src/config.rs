//! Run configuration: a flat `key = value` text format with `#` comments.
//!
//! ```text
//! alpha = 1.5
//! beta = 0.8
//! eta = 0.5
//! lambda = 3.2
//! f = paper_example
//! grid_n = 256      # optional, as are all keys below
//! ```
//!
//! Command-line flags of the same names override file values.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::ModelParams;
use crate::quad::QuadSpec;
use crate::solver::SourceFunction;

/// Every accepted key, in canonical order.
pub const KEYS: &[&str] = &[
    "alpha",
    "beta",
    "eta",
    "lambda",
    "f",
    "grid_n",
    "tol",
    "max_iter",
    "R",
    "seed",
    "panels_per_segment",
    "grading_levels",
    "out",
    "report",
    "check_hypotheses",
    "verify_residual",
];

const REQUIRED: &[&str] = &["alpha", "beta", "eta", "lambda", "f"];

/// What a failed hypothesis check does to the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisMode {
    /// Report only.
    Off,
    /// Report and print a warning.
    #[default]
    Warn,
    /// Refuse to solve; exit status 2.
    Strict,
}

impl FromStr for HypothesisMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(HypothesisMode::Off),
            "warn" => Ok(HypothesisMode::Warn),
            "strict" => Ok(HypothesisMode::Strict),
            _ => Err(Error::config(
                None,
                format!("check_hypotheses must be off, warn or strict, got {s:?}"),
            )),
        }
    }
}

impl fmt::Display for HypothesisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HypothesisMode::Off => "off",
            HypothesisMode::Warn => "warn",
            HypothesisMode::Strict => "strict",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub lambda: f64,
    pub f: SourceFunction,
    pub grid_n: usize,
    pub tol: f64,
    pub max_iter: usize,
    #[serde(rename = "R")]
    pub r: f64,
    pub seed: u64,
    pub quad: QuadSpec,
    pub out: PathBuf,
    pub report: PathBuf,
    pub check_hypotheses: HypothesisMode,
    pub verify_residual: bool,
}

/// Raw `key = value` pairs with the line each came from (`None` for flags).
#[derive(Debug, Clone, Default)]
pub struct ConfigEntries {
    entries: BTreeMap<String, (Option<usize>, String)>,
}

impl ConfigEntries {
    /// Parses config text. Unknown and repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = ConfigEntries::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::config(
                    Some(line),
                    format!("expected `key = value`, got {content:?}"),
                ));
            };
            let (key, value) = (key.trim(), value.trim());
            check_key(key, Some(line))?;
            if value.is_empty() {
                return Err(Error::config(Some(line), format!("empty value for {key}")));
            }
            if let Some((first, _)) = out.entries.get(key) {
                return Err(Error::config(
                    Some(line),
                    format!(
                        "duplicate key {key} (first set on line {})",
                        first.unwrap_or(0)
                    ),
                ));
            }
            out.entries
                .insert(key.to_string(), (Some(line), value.to_string()));
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Sets `key`, replacing any file value.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        check_key(key, None)?;
        self.entries.insert(key.to_string(), (None, value.into()));
        Ok(())
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, raw)) => raw
                .parse()
                .map(Some)
                .map_err(|e| Error::config(*line, format!("bad value for {key}: {e}"))),
        }
    }

    fn require<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        self.get(key)?
            .ok_or_else(|| Error::config(None, format!("missing required key {key}")))
    }

    pub fn build(&self) -> Result<RunConfig> {
        for key in REQUIRED {
            if !self.entries.contains_key(*key) {
                return Err(Error::config(None, format!("missing required key {key}")));
            }
        }
        let dq = QuadSpec::default();
        let cfg = RunConfig {
            alpha: self.require("alpha")?,
            beta: self.require("beta")?,
            eta: self.require("eta")?,
            lambda: self.require("lambda")?,
            f: self.require("f")?,
            grid_n: self.get("grid_n")?.unwrap_or(256),
            tol: self.get("tol")?.unwrap_or(1e-10),
            max_iter: self.get("max_iter")?.unwrap_or(200),
            r: self.get("R")?.unwrap_or(20.0),
            seed: self.get("seed")?.unwrap_or(42),
            quad: QuadSpec::new(
                self.get("panels_per_segment")?
                    .unwrap_or(dq.panels_per_segment()),
                self.get("grading_levels")?.unwrap_or(dq.grading_levels()),
            )?,
            out: self
                .get("out")?
                .unwrap_or_else(|| PathBuf::from("solution.csv")),
            report: self
                .get("report")?
                .unwrap_or_else(|| PathBuf::from("report.json")),
            check_hypotheses: self.get("check_hypotheses")?.unwrap_or_default(),
            verify_residual: self.get("verify_residual")?.unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn check_key(key: &str, line: Option<usize>) -> Result<()> {
    if KEYS.contains(&key) {
        Ok(())
    } else {
        Err(Error::config(line, format!("unknown key {key:?}")))
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        ConfigEntries::parse(text)?.build()
    }

    fn validate(&self) -> Result<()> {
        self.params()?;
        if self.grid_n < 4 {
            return Err(Error::config(
                None,
                format!("grid_n must be at least 4, got {}", self.grid_n),
            ));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::config(
                None,
                format!("tol must be positive, got {}", self.tol),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::config(None, "max_iter must be at least 1"));
        }
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::config(
                None,
                format!("R must be positive, got {}", self.r),
            ));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.alpha, self.beta, self.eta, self.lambda)
    }

    /// Canonical text form: every key, in [`KEYS`] order.
    pub fn to_text(&self) -> String {
        let values = [
            self.alpha.to_string(),
            self.beta.to_string(),
            self.eta.to_string(),
            self.lambda.to_string(),
            self.f.to_string(),
            self.grid_n.to_string(),
            self.tol.to_string(),
            self.max_iter.to_string(),
            self.r.to_string(),
            self.seed.to_string(),
            self.quad.panels_per_segment().to_string(),
            self.quad.grading_levels().to_string(),
            self.out.display().to_string(),
            self.report.display().to_string(),
            self.check_hypotheses.to_string(),
            self.verify_residual.to_string(),
        ];
        KEYS.iter()
            .zip(values)
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}
