//! Permutation groups at desk scale: stabilizer chains, actions, subgroup
//! lattices, derangement search, normal coverings, affine groups over prime
//! fields, coset enumeration and a small numeric layer.

pub mod actions;
pub mod affine;
pub mod classes;
pub mod constructions;
pub mod derangements;
pub mod error;
pub mod group;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod perm;

pub use actions::{
    action_kernel, coset_action, disjoint_union, is_primitive, is_primitive_on, orbit,
    point_stabilizer, CosetAction, LabelledOrbit, MultiOrbitAction, Primitivity,
};
pub use classes::ConjugacyClassTable;
pub use error::{Error, Result};
pub use group::{ElementIndex, PermGroup, DEFAULT_ENUMERATION_CAP};
pub use lattice::{
    all_subgroups, maximal_subgroups, subgroup_conjugacy_classes, SubgroupLattice, SubgroupRecord,
    DEFAULT_LATTICE_CAP,
};
pub use perm::{element_order, Permutation};
