//! Candidate solutions, the operator `T`, Picard iteration and the sampled
//! contraction diagnostic.

mod altering;
pub mod contraction;
mod grid;
mod operator;
mod picard;
mod source;

pub use altering::AlteringDistance;
pub use contraction::{
    check_contraction, pair_margin, ContractionOptions, ContractionReport, SupReading,
};
pub use grid::{sup_norm_distance, GridFunction};
pub use operator::{apply_t, HammersteinOperator};
pub use picard::{picard_iterate, picard_solve, PicardOptions, SolveResult};
pub use source::SourceFunction;
