#![allow(clippy::needless_range_loop)]

pub mod chaincx;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod jumploci;
pub mod limits;
pub mod polymat;
pub mod ring;
pub mod verify;

pub use chaincx::{FreeComplex, GroupPresentation};
pub use error::{Error, Result};
pub use groebner::{DimensionResult, Ideal};
pub use jumploci::{jump_loci, JumpLocusSet};
pub use limits::Limits;
pub use polymat::PolyMatrix;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/jump-loci.md")]
    mod jump_loci {}
    #[doc = include_str!("../../../book/src/propagation.md")]
    mod propagation {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
