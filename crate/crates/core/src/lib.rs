//! Exact computations with biset functors on finite p-groups: Burnside groups,
//! the kernel of linearization and its dual, and limits over group sections.

pub mod biset;
pub mod burnside;
pub mod error;
pub mod functor;
pub mod group;
pub mod lattice;
pub mod limit;

pub use error::{Error, Result};
