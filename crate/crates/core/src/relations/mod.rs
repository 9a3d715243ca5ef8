//! Equivalence relations on G-sets: invariance, orbitality, the relations
//! `R_{H,X~}` generated by a subgroup and a witness set, and the maximal
//! witness operators.

mod decide;
mod ops;
mod partition;
mod relation;

use serde::Serialize;
use thiserror::Error;

use crate::action::{ActionError, Point};
use crate::group::{GroupError, Subgroup};

pub use decide::{all_weak_witnesses, is_weakly_orbital, DeciderConfig, SubgroupSearch};
pub use ops::{
    is_invariant, is_orbital, kernel_group, maximal_pair, maximal_pair_group_first, maximal_witness_group,
    maximal_witness_set, orbit_relation, orbital_via_full_witness, point_mask, r_relation, r_successors,
    transitive_witness, transversal_witness_search, witnesses,
};
pub use partition::{AllPartitions, Partition};
pub use relation::Relation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("relation is on {found} points but the action has {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("point {0} is out of range")]
    PointOutOfRange(Point),
    #[error("the relation is not invariant under the action")]
    NotInvariant,
    #[error("the class of point {0} meets more than one orbit")]
    ClassCrossesOrbit(Point),
    #[error("the witness set is empty")]
    EmptyWitnessSet,
    #[error("the pair does not witness the relation")]
    WitnessMismatch,
    #[error("the action is not transitive")]
    NotTransitive,
    #[error("the restricted subgroup search found no witness, so the answer is unknown")]
    SearchIncomplete,
    #[error("the search space has {size} candidates, above the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A pair `(H, X~)` with flags telling whether each component is maximal
/// for the relation it witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub subgroup: Subgroup,
    pub witness_set: Vec<Point>,
    pub subgroup_maximal: bool,
    pub set_maximal: bool,
}

impl WitnessPair {
    pub fn is_maximal_pair(&self) -> bool {
        self.subgroup_maximal && self.set_maximal
    }

    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            subgroup: self.subgroup.elements().to_vec(),
            subgroup_order: self.subgroup.order(),
            witness_set: self.witness_set.clone(),
            witness_set_size: self.witness_set.len(),
            maximal: [self.subgroup_maximal, self.set_maximal],
        }
    }
}

/// Serializable view of a [`WitnessPair`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub subgroup: Vec<usize>,
    pub subgroup_order: usize,
    pub witness_set: Vec<Point>,
    pub witness_set_size: usize,
    pub maximal: [bool; 2],
}
