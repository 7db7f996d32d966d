//! Information lattices of partitions and their dual subgroup lattices.
//!
//! Partitions of a finite probability space carry Shannon entropy and form a
//! lattice under common refinement and finest common coarsening. Subgroups of
//! a finite group form the dual lattice under intersection and generated
//! join, with entropy replaced by a normalized log-index. This crate builds
//! both lattices, checks the correspondence between them, approximates
//! entropy vectors by log-index vectors through dilation, and tests linear
//! information laws on either side.

pub mod approximation;
pub mod cli;
mod dsu;
pub mod error;
pub mod instance;
pub mod lattice;
pub mod laws;
pub mod partitions;
pub mod perm_groups;

pub use error::{Error, Result};
pub use instance::{GroupInstance, Instance, PartitionInstance};
pub use lattice::{
    dual_isomorphism_check, export_hasse_dot, generate_lattice, partition_lattice,
    subgroup_lattice, Convention, Lattice, LatticeTerm,
};
pub use laws::{
    builtin_law, eval_on_partitions, eval_on_subgroups, falsify, parse_law, LawExpression,
};
pub use partitions::{
    common_refinement, conditional_entropy, entropy, finest_common_coarsening, mutual_information,
    refines, InfoElement, LogBase, Partition, ProbabilitySpace,
};
pub use perm_groups::{
    compose, coset_partition, generated_join, intersection, normalized_log_index, orbit_partition,
    partition_stabilizer, PermGroup, Permutation, Subgroup,
};
