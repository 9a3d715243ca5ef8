//! Lattices of pseudo-closed sets, agreeable structures, and the
//! pseudo-closedness criteria for orbital and weakly orbital relations.

pub mod agree;
pub mod search;
mod separation;
mod set_lattice;
mod structure;
mod theorems;

use thiserror::Error;

pub use agree::{check_agreeable, AgreeConfig, AgreeabilityReport, AxiomOutcome, AxiomStatus, AxiomWitness};
pub use separation::{cross_section_condition, quotient_separated, separation_report, SeparationReport};
pub use set_lattice::{Preorder, ProductLattice, SetLattice};
pub use structure::{completion_generators, AgreeableStructure, Slot};
pub use theorems::{
    hfix_pseudo_closed_check, stabilizer_pseudo_closed_check, verify_thm_orb, verify_thm_worb, Theorem,
    TheoremReport, VerifyConfig,
};

use crate::group::GroupError;
use crate::relations::RelationError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice {slot} has universe {found}, expected {expected}")]
    UniverseMismatch { slot: Slot, expected: usize, found: usize },
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("more than {budget} lattice members")]
    ClosureBudgetExceeded { budget: usize },
    #[error("point {0} is out of range")]
    PointOutOfRange(usize),
    #[error("the structure is not agreeable (axioms {0:?} fail)")]
    NotAgreeable(Vec<u8>),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("the relation is not orbital")]
    NotOrbital,
    #[error("the relation is not weakly orbital")]
    NotWeaklyOrbital,
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
