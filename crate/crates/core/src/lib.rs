//! Finite group toolkit: permutation groups, subgroup structure,
//! affine-cyclic sections, Heisenberg-type group actions and mod-p
//! cohomology dimensions.

pub mod arith;
pub mod bounds;
pub mod catalog;
pub mod checks;
pub mod cohomology;
pub mod config;
pub mod dichotomy;
pub mod error;
pub mod fp;
pub mod heisenberg;
pub mod perm;
pub mod structure;
pub mod table;

pub use config::Guards;
pub use error::{Error, Result};
pub use perm::{group_from_spec, GroupSpec, PermGroup, Permutation};
pub use structure::GroupContext;
