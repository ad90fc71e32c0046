//! Covering graphs of patterns: minimum ψ-mean cycles, loop inventories and
//! horseshoes. Independent of the lifting machinery.

mod cycles;
mod graph;
mod horseshoe;

use thiserror::Error;

pub use cycles::{
    downset_violations, enumerate_cycles_upto, enumerate_loops, left_endpoint, loop_weight,
    min_mean_by_enumeration, min_mean_cycle, orp_inventory, simple_cycles, CycleRecord, ResolvedLoop,
    MAX_LOOP_LENGTH,
};
pub use graph::{build_covering_graph, pattern_fixed_point, Affine, Arc, CoveringGraph, Small};
pub use horseshoe::has_horseshoe;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("horseshoe; full interval of rotation numbers")]
    Horseshoe,
    #[error("a fixed point has no covering graph")]
    Degenerate,
    #[error("max period {requested} exceeds the limit of {limit}")]
    MaxPeriod { requested: usize, limit: usize },
    #[error("covering graph has no cycles")]
    EmptyGraph,
}
