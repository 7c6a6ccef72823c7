//! Exact projective-lattice calculus for arithmetic subgroups of PSL2(R),
//! the classification of the nine groups labelling the affine E8 diagram,
//! reconstruction of its edges, and the super analogue.

pub mod arith;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod tree;
pub mod groupsys;
pub mod cusps;
pub mod classify;
pub mod diagram;
pub mod super_analogue;

pub use error::{Error, Result};
