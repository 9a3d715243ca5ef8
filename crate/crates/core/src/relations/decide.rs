use rayon::prelude::*;
use serde::Serialize;

use super::ops::{maximal_pair, maximal_witness_set, witnesses};
use super::{is_invariant, Partition, RelationError, WitnessPair};
use crate::action::GAction;
use crate::group::{enumerate_subgroups_within, restricted_subgroups_within, GroupError, Subgroup, DEFAULT_SUBGROUP_BOUND};

#[derive(Clone, Debug)]
pub struct DeciderConfig {
    /// Subgroups are enumerated exhaustively inside a class stabilizer of at
    /// most this order; larger stabilizers fall back to a partial search.
    pub subgroup_bound: usize,
    pub parallel: bool,
}

impl Default for DeciderConfig {
    fn default() -> Self {
        DeciderConfig { subgroup_bound: DEFAULT_SUBGROUP_BOUND, parallel: true }
    }
}

/// How the candidate subgroups were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupSearch {
    /// Every subgroup of the class stabilizer up to conjugacy.
    Exhaustive,
    /// Only cyclic and two-generated subgroups.
    Restricted,
}

/// Candidate witness groups: subgroups of the class stabilizer of the first
/// orbit representative, one per conjugacy class of `G`.
///
/// Any witness `(H, X~)` can be conjugated so that `X~` contains that
/// representative, which puts `H` inside its class stabilizer; replacing `X~`
/// by the maximal set for `H` keeps it a witness.
fn candidates(action: &GAction, e: &Partition, cfg: &DeciderConfig) -> Result<(Vec<Subgroup>, SubgroupSearch), RelationError> {
    if !is_invariant(action, e)? {
        return Err(RelationError::NotInvariant);
    }
    let data = action.orbit_data();
    for x in 0..action.domain() {
        let first = e.class(x)[0];
        if data.orbit_of[first] != data.orbit_of[x] {
            return Err(RelationError::ClassCrossesOrbit(x));
        }
    }
    let g = action.group();
    let stab = action.class_stabilizer(e, data.reps[0])?;
    match enumerate_subgroups_within(g, &stab, true, cfg.subgroup_bound) {
        Ok(list) => Ok((list, SubgroupSearch::Exhaustive)),
        Err(GroupError::BoundExceeded { .. }) => Ok((restricted_subgroups_within(g, &stab), SubgroupSearch::Restricted)),
        Err(err) => Err(err.into()),
    }
}

fn try_candidate(action: &GAction, e: &Partition, h: &Subgroup) -> Option<WitnessPair> {
    let xt = maximal_witness_set(action, e, h).ok()?;
    if !witnesses(action, e, h, &xt) {
        return None;
    }
    let points: Vec<usize> = xt.ones().collect();
    maximal_pair(action, e, h, &points).ok()
}

/// Decides weak orbitality. Returns the maximal pair grown from the first
/// successful candidate subgroup (in subgroup order), or `None` when `E` is
/// not weakly orbital.
///
/// For an orbital `E` the returned pair is `(H_E, X)`. Fails with
/// `SearchIncomplete` when the class stabilizer exceeds the bound and the
/// restricted search finds nothing.
pub fn is_weakly_orbital(action: &GAction, e: &Partition, cfg: &DeciderConfig) -> Result<Option<WitnessPair>, RelationError> {
    if action.domain() == 0 {
        return Ok(Some(WitnessPair {
            subgroup: action.group().trivial_subgroup(),
            witness_set: Vec::new(),
            subgroup_maximal: true,
            set_maximal: true,
        }));
    }
    let (list, mode) = candidates(action, e, cfg)?;
    let found = if cfg.parallel {
        list.par_iter().find_map_first(|h| try_candidate(action, e, h))
    } else {
        list.iter().find_map(|h| try_candidate(action, e, h))
    };
    match (found, mode) {
        (Some(pair), _) => Ok(Some(pair)),
        (None, SubgroupSearch::Exhaustive) => Ok(None),
        (None, SubgroupSearch::Restricted) => Err(RelationError::SearchIncomplete),
    }
}

/// Every distinct maximal pair grown from a successful candidate subgroup,
/// together with the search mode used.
pub fn all_weak_witnesses(
    action: &GAction,
    e: &Partition,
    cfg: &DeciderConfig,
) -> Result<(Vec<WitnessPair>, SubgroupSearch), RelationError> {
    if action.domain() == 0 {
        return Ok((is_weakly_orbital(action, e, cfg)?.into_iter().collect(), SubgroupSearch::Exhaustive));
    }
    let (list, mode) = candidates(action, e, cfg)?;
    let found: Vec<WitnessPair> = if cfg.parallel {
        list.par_iter().filter_map(|h| try_candidate(action, e, h)).collect()
    } else {
        list.iter().filter_map(|h| try_candidate(action, e, h)).collect()
    };
    let mut out: Vec<WitnessPair> = Vec::new();
    for w in found {
        if !out.contains(&w) {
            out.push(w);
        }
    }
    Ok((out, mode))
}
