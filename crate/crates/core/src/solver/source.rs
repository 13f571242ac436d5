use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Singularity of the reference source at `u = 24`.
const REFERENCE_POLE: f64 = 24.0;
/// Evaluation is refused this close to (or beyond) the pole.
const REFERENCE_GUARD: f64 = 1e-6;

/// Built-in right-hand sides `f(t, u)`.
///
/// Text form (also the config grammar): `constant:<c>`, `affine:<a>,<b>`,
/// `paper_example`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceFunction {
    /// `f ≡ c`, `c ≥ 0`.
    Constant(f64),
    /// `f = a + b·u` with `a, b ≥ 0`.
    Affine { a: f64, b: f64 },
    /// `f(t,u) = ln(3²⁰ + t²) + t³ + 1/(24 − u)`, defined for `u < 24`.
    Reference,
}

impl SourceFunction {
    pub fn constant(c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "constant source must be finite and nonnegative, got {c}"
            )));
        }
        Ok(SourceFunction::Constant(c))
    }

    pub fn affine(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "affine source needs a >= 0 and b >= 0, got a = {a}, b = {b}"
            )));
        }
        Ok(SourceFunction::Affine { a, b })
    }

    /// Whether `u` lies in the declared domain.
    pub fn admits(&self, u: f64) -> bool {
        match self {
            SourceFunction::Reference => u < REFERENCE_POLE - REFERENCE_GUARD,
            _ => u.is_finite(),
        }
    }

    /// Evaluates `f(t, u)`; the reference source refuses `u ≥ 24 − 1e−6`.
    #[inline]
    pub fn eval(&self, t: f64, u: f64) -> Result<f64> {
        if !self.admits(u) {
            return Err(Error::SourceDomain {
                source_fn: self.to_string(),
                t,
                u,
                grid_index: None,
            });
        }
        Ok(self.eval_unchecked(t, u))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, t: f64, u: f64) -> f64 {
        match *self {
            SourceFunction::Constant(c) => c,
            SourceFunction::Affine { a, b } => a + b * u,
            SourceFunction::Reference => {
                // ln(3^20 + t²) = 20 ln 3 + ln(1 + t²/3^20)
                20.0 * 3f64.ln()
                    + (t * t / 3f64.powi(20)).ln_1p()
                    + t * t * t
                    + 1.0 / (REFERENCE_POLE - u)
            }
        }
    }

    /// `true` when the source ignores `u`.
    pub fn is_constant(&self) -> bool {
        matches!(self, SourceFunction::Constant(_))
    }
}

impl fmt::Display for SourceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceFunction::Constant(c) => write!(f, "constant:{c}"),
            SourceFunction::Affine { a, b } => write!(f, "affine:{a},{b}"),
            SourceFunction::Reference => f.write_str("paper_example"),
        }
    }
}

impl FromStr for SourceFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::InvalidParams(format!("bad source spec {s:?}: {why}"));
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| bad(&format!("{x:?}: {e}")))
        };
        if s == "paper_example" {
            return Ok(SourceFunction::Reference);
        }
        match s.split_once(':') {
            Some(("constant", c)) => SourceFunction::constant(num(c)?),
            Some(("affine", rest)) => {
                let (a, b) = rest
                    .split_once(',')
                    .ok_or_else(|| bad("expected affine:<a>,<b>"))?;
                SourceFunction::affine(num(a)?, num(b)?)
            }
            _ => Err(bad(
                "expected constant:<c>, affine:<a>,<b> or paper_example",
            )),
        }
    }
}

impl Serialize for SourceFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
