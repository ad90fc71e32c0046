//! Cyclic patterns and their over-rotation invariants.

mod orp;
mod overtwist;
mod ovr;
mod pattern;
mod sharkovsky;
mod structure;

pub use orp::{gtrdot, orp_of_cycle, side_switches, GeneralPair, InvalidPair, OverRotationPair};
pub use overtwist::{
    bimodal_overtwist, enumerate_bimodal_overtwists, unimodal_overtwist, OvertwistError,
};
#[allow(unused_imports)]
pub(crate) use overtwist::bimodal_formula;
pub use ovr::{in_ovr, ovr_set, EtaError, EtaSpec, OvrSet};
pub use pattern::{CyclicPattern, PatternError};
pub use sharkovsky::{sh_set, sharkovsky_cmp, sharkovsky_ge, sharkovsky_gt, SharkovskyKey};
pub use structure::{has_block_structure, is_convergent, modality, BlockStructure};
