//! Weighted line-and-conic orbifolds on the projective plane: exact orbifold
//! Chern numbers, Kummer covering lifts and orbifold fundamental groups.

pub mod configuration;
pub mod coverings;
pub mod groups;
pub mod invariants;
pub mod numerics;
