//! Exact piecewise-linear self-maps of `[0, 1]`.

mod anatomy;
mod intervals;
mod map;
mod normalize;
mod plinear;

pub use anatomy::{
    canonical_inverse, detect_bimodal, detect_well_behaved, AnatomyError, BimodalAnatomy,
    BimodalCase, WellBehavedAnatomy,
};
pub use intervals::IntervalSet;
pub use map::{MapSpec, Piece, PwlError, PwlMap};
pub use normalize::{core_interval, prepare, Normalization, Prepared};
pub use plinear::{p_linear_from_pattern, p_linear_orbit};
