use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Control functions `[0, ∞) → [0, ∞)` that are continuous, non-decreasing
/// and vanish exactly at 0.
#[derive(Debug, Clone, PartialEq)]
pub enum AlteringDistance {
    /// `t ↦ c·t^q`, `c > 0`, `q ≥ 1`.
    Power {
        c: f64,
        q: f64,
    },
    /// `t ↦ t²` on `[0, 1)`, `1` beyond.
    ClampedPower,
    Identity,
    /// `t ↦ factor·inner(t)`, `factor > 0`.
    Scaled {
        factor: f64,
        inner: Box<AlteringDistance>,
    },
}

impl AlteringDistance {
    pub fn power(c: f64, q: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0 && q.is_finite() && q >= 1.0) {
            return Err(Error::InvalidParams(format!(
                "power altering distance needs c > 0 and q >= 1, got c = {c}, q = {q}"
            )));
        }
        Ok(AlteringDistance::Power { c, q })
    }

    pub fn scaled(factor: f64, inner: AlteringDistance) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::InvalidParams(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        Ok(AlteringDistance::Scaled {
            factor,
            inner: Box::new(inner),
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            AlteringDistance::Power { c, q } => c * t.powf(*q),
            AlteringDistance::ClampedPower => {
                if t < 1.0 {
                    t * t
                } else {
                    1.0
                }
            }
            AlteringDistance::Identity => t,
            AlteringDistance::Scaled { factor, inner } => factor * inner.eval(t),
        }
    }

    /// Checks the defining properties on `points` equispaced nodes of `[0, upper]`.
    pub fn validate_on_grid(&self, upper: f64, points: usize) -> Result<()> {
        if self.eval(0.0) != 0.0 {
            return Err(Error::InvalidParams(format!("{self}: value at 0 is not 0")));
        }
        let mut prev = 0.0;
        for i in 1..points {
            let t = upper * i as f64 / (points - 1) as f64;
            let v = self.eval(t);
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{self}: value {v} at t = {t}"
                )));
            }
            if v < prev {
                return Err(Error::InvalidParams(format!(
                    "{self}: decreases at t = {t}"
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

impl fmt::Display for AlteringDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlteringDistance::Power { c, q } => write!(f, "{c}*t^{q}"),
            AlteringDistance::ClampedPower => f.write_str("min(t^2,1)"),
            AlteringDistance::Identity => f.write_str("t"),
            AlteringDistance::Scaled { factor, inner } => write!(f, "{factor}*({inner})"),
        }
    }
}

impl Serialize for AlteringDistance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
