//! Over-rotation intervals of bimodal and well-behaved interval maps, computed
//! exactly over the rationals, with a covering-graph oracle to cross-check.

pub mod combinatorics;
pub mod lifting;
pub mod oracle;
pub mod pwlmap;
pub mod rational;
pub mod rotation;
#[cfg(feature = "sample")]
pub mod sample;

// The book's snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/rotation.md")]
    mod rotation {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
