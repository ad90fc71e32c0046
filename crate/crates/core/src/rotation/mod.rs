//! Rotation numbers of monotone lifts and the over-rotation interval.

mod interval;
mod number;

pub use interval::{
    over_rotation_interval, over_rotation_interval_with, realize_zf, verify_overtwist,
    verify_overtwist_report, Classification, EndpointSource, MapAnatomy, OverRotationInterval,
    OvertwistReport, RealizedOrbit, RotationError, RotationOptions,
};
pub use number::{
    enclosure, farey_search, rotation_number, test_candidate, Candidate, RotationResult,
    DEFAULT_MAX_DENOMINATOR, DEFAULT_MAX_ITERATIONS,
};
