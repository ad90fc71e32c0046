//! Circle lifts of oriented maps and their monotone lower bounds.

mod lift;
mod lower;
mod monotone;
mod sigma;

use thiserror::Error;

pub use lift::{conjugate_g, lift_bimodal, lift_well_behaved, ConjugatedMap, DegreeOneLift, LiftPiece};
pub use lower::{is_eventually_increasing, lower_bound_g, lower_g_bimodal, LowerMap};
pub use monotone::{resource_limit, MonotoneLift};
pub use sigma::SigmaConjugacy;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("the lift is two-valued at {0}")]
    Ambiguous(String),
    #[error("lift is not eventually increasing: the lower bound jumps at {0}")]
    NotEventuallyIncreasing(String),
    #[error("resource limit hit: {pieces} pieces exceed the limit of {limit}")]
    ResourceLimit { pieces: usize, limit: usize },
    #[error("malformed monotone map: {0}")]
    Malformed(String),
}
