//! Invariant equivalence relations of finite group actions.
//!
//! The crate works with finite groups given by multiplication tables, their
//! actions on finite sets, and equivalence relations on those sets. It decides
//! whether a relation is orbital (the orbit relation of a subgroup) or weakly
//! orbital (of the form `R_{H,X~}` for a subgroup `H` and a witness set `X~`),
//! computes maximal witnesses, and checks the pseudo-closed conditions of
//! agreeable lattice structures.

pub mod action;
pub mod catalog;
pub mod format;
pub mod group;
pub mod lattice;
pub mod relations;

pub use action::{ActionError, GAction, Point};
pub use format::FormatError;
pub use group::{Elem, FiniteGroup, GroupError, PermGroup, Subgroup};
pub use lattice::{AgreeableStructure, LatticeError, SetLattice, Slot};
pub use relations::{Partition, Relation, RelationError, WitnessPair};
