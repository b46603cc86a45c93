//! Permutation groups: construction, order, membership, element listing,
//! quotients and semidirect products.

mod chain;
pub mod construct;
mod group;
mod permutation;
pub mod spec;

pub use construct::{regular_representation, semidirect_product};
pub use group::{quotient_group, PermGroup};
pub use permutation::Permutation;
pub use spec::{group_from_spec, GroupSpec, SemidirectSpec};
