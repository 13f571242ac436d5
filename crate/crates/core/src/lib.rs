//! Numerical toolkit for the fractional thermostat boundary value problem
//!
//! ```text
//! D^α u(t) + λ f(t, u(t)) = 0,   0 < t < 1,   1 < α ≤ 2
//! u'(0) = 0,   β D^{α−1} u(1) + u(η) = 0
//! ```
//!
//! solved through its Green's-function integral form `u = λ ∫ G(t,s) f(s,u(s)) ds`
//! by Picard iteration, with independent checks of the result.

pub mod caputo;
pub mod cli;
pub mod config;
pub mod error;
pub mod green;
pub mod hypotheses;
pub mod lab;
pub mod quad;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};
pub use green::{KernelBounds, ModelParams};
pub use quad::QuadSpec;
pub use solver::{GridFunction, SourceFunction};
