//! A one-dimensional instance of the relational contraction theorem.
//!
//! On `C = [−2,−1] ∪ [1,2] ∪ {0}` the map `Tx = −x` on `[−2,−1]` and `0`
//! elsewhere satisfies, for every related pair,
//!
//! ```text
//! |Tx − Ty|² ≤ |Tx − y|² − |x − y|²/100000
//! ```
//!
//! and every orbit reaches the unique fixed point 0 within three steps.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Numerical slack for the inequality.
pub const LAB_TOL: f64 = 1e-12;
/// `ψ(t) = t²/PSI_DENOM`.
pub const PSI_DENOM: f64 = 100_000.0;
/// Seeded starting points for the orbit check.
pub const ORBIT_STARTS: usize = 100;
/// Steps an orbit may take to reach 0.
pub const ORBIT_STEPS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Piece {
    /// `[−2, −1]`
    Negative,
    /// `[1, 2]`
    Positive,
    /// `{0}`
    Origin,
}

/// A point of `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExamplePoint(f64);

impl ExamplePoint {
    pub fn new(x: f64) -> Result<Self> {
        if x == 0.0 || (-2.0..=-1.0).contains(&x) || (1.0..=2.0).contains(&x) {
            // Normalise −0 so equality with the origin is exact.
            Ok(ExamplePoint(if x == 0.0 { 0.0 } else { x }))
        } else {
            Err(Error::domain(format!(
                "{x} is not in [-2,-1] ∪ [1,2] ∪ {{0}}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn piece(self) -> Piece {
        if self.0 < 0.0 {
            Piece::Negative
        } else if self.0 > 0.0 {
            Piece::Positive
        } else {
            Piece::Origin
        }
    }
}

impl fmt::Display for ExamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn example_map(x: ExamplePoint) -> ExamplePoint {
    match x.piece() {
        Piece::Negative => ExamplePoint(-x.0),
        Piece::Positive | Piece::Origin => ExamplePoint(0.0),
    }
}

/// Related means: both in the same interval, or both at the origin.
pub fn example_related(x: ExamplePoint, y: ExamplePoint) -> bool {
    x.piece() == y.piece()
}

/// `|Tx − y|² − |x − y|²/100000 − |Tx − Ty|²`; negative means violated.
pub fn inequality_margin(x: ExamplePoint, y: ExamplePoint) -> f64 {
    let (tx, ty) = (example_map(x).0, example_map(y).0);
    let d = x.0 - y.0;
    (tx - y.0).powi(2) - d * d / PSI_DENOM - (tx - ty).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LabReport {
    pub samples: usize,
    pub seed: u64,
    pub violations: usize,
    pub worst_margin: f64,
    pub orbit_starts: usize,
    /// Orbits that had not reached 0 after three steps.
    pub orbit_failures: usize,
}

impl LabReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.orbit_failures == 0
    }
}

/// Picks a piece uniformly, then a point uniformly within it.
pub fn sample_point(rng: &mut impl Rng) -> ExamplePoint {
    let piece = random_piece(rng);
    sample_in(rng, piece)
}

fn random_piece(rng: &mut impl Rng) -> Piece {
    match rng.gen_range(0..3) {
        0 => Piece::Negative,
        1 => Piece::Positive,
        _ => Piece::Origin,
    }
}

fn sample_in(rng: &mut impl Rng, piece: Piece) -> ExamplePoint {
    ExamplePoint(match piece {
        Piece::Negative => rng.gen_range(-2.0..=-1.0),
        Piece::Positive => rng.gen_range(1.0..=2.0),
        Piece::Origin => 0.0,
    })
}

/// Draws `samples` related pairs and counts inequality violations, then
/// follows [`ORBIT_STARTS`] seeded orbits.
pub fn example_verify(samples: usize, seed: u64) -> Result<LabReport> {
    if samples == 0 {
        return Err(Error::domain("sample_count must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let piece = random_piece(&mut rng);
        let (x, y) = (sample_in(&mut rng, piece), sample_in(&mut rng, piece));
        debug_assert!(example_related(x, y));
        let m = inequality_margin(x, y);
        worst = worst.min(m);
        if m < -LAB_TOL {
            violations += 1;
        }
    }
    let mut orbit_failures = 0;
    for _ in 0..ORBIT_STARTS {
        let mut x = sample_point(&mut rng);
        for _ in 0..ORBIT_STEPS {
            x = example_map(x);
        }
        if x.0 != 0.0 {
            orbit_failures += 1;
        }
    }
    Ok(LabReport {
        samples,
        seed,
        violations,
        worst_margin: worst,
        orbit_starts: ORBIT_STARTS,
        orbit_failures,
    })
}
