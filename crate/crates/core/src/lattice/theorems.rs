//! Executable forms of the pseudo-closedness criteria for orbital and weakly
//! orbital relations on agreeable structures.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::agree::{check_agreeable, AgreeConfig};
use super::{AgreeableStructure, LatticeError, Slot};
use crate::group::{enumerate_subgroups_within, DEFAULT_SUBGROUP_BOUND};
use crate::relations::{
    is_weakly_orbital, kernel_group, maximal_witness_group, maximal_witness_set, orbit_relation, witnesses,
    DeciderConfig, Partition, Relation, RelationError,
};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub agree: AgreeConfig,
    /// Cap on the number of members of `L_X` enumerated when searching for
    /// pseudo-closed witness sets.
    pub max_lattice_members: usize,
    pub subgroup_bound: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { agree: AgreeConfig::default(), max_lattice_members: 1 << 20, subgroup_bound: DEFAULT_SUBGROUP_BOUND }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Orbital,
    WeaklyOrbital,
}

/// The four equivalent conditions of a criterion, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub conditions: [bool; 4],
    /// All four conditions have the same value.
    pub agree: bool,
    pub skipped_axioms: Vec<u8>,
    pub notes: Vec<String>,
    pub witness_subgroup: Option<Vec<usize>>,
    pub witness_set: Option<Vec<usize>>,
}

const COMPLETENESS_NOTE: &str =
    "finite lattices are closed under all intersections, so downward completeness holds automatically";

fn require_agreeable(s: &AgreeableStructure, cfg: &VerifyConfig) -> Result<Vec<u8>, LatticeError> {
    let report = check_agreeable(s, &cfg.agree);
    let failed = report.failed();
    if !failed.is_empty() {
        return Err(LatticeError::NotAgreeable(failed));
    }
    Ok(report.skipped())
}

fn classes_closed(s: &AgreeableStructure, e: &Partition) -> bool {
    let lx = s.lattice(Slot::X);
    e.blocks().iter().all(|b| lx.contains(&e.class_mask(b[0])))
}

/// Conditions: (1) `E` is pseudo-closed, (2) every class is, (3) `H_E` is,
/// (4) `E = E_H` for some pseudo-closed subgroup `H`.
pub fn verify_thm_orb(s: &AgreeableStructure, e: &Partition, cfg: &VerifyConfig) -> Result<TheoremReport, LatticeError> {
    let skipped = require_agreeable(s, cfg)?;
    let action = s.action();
    let h_e = match kernel_group(action, e) {
        Ok(h) => h,
        Err(RelationError::NotInvariant) => return Err(LatticeError::NotOrbital),
        Err(err) => return Err(err.into()),
    };
    if orbit_relation(action, &h_e) != *e {
        return Err(LatticeError::NotOrbital);
    }
    let lg = s.lattice(Slot::G);
    let c1 = s.lattice(Slot::XxX).contains(&e.pair_set());
    let c2 = classes_closed(s, e);
    let c3 = lg.contains(h_e.mask());
    // E = E_H forces H <= H_E, so the subgroups of H_E are all candidates.
    let subgroups = enumerate_subgroups_within(action.group(), &h_e, false, cfg.subgroup_bound)?;
    let found = subgroups
        .into_iter()
        .find(|h| lg.contains(h.mask()) && orbit_relation(action, h) == *e);
    let c4 = found.is_some();
    let conditions = [c1, c2, c3, c4];
    Ok(TheoremReport {
        theorem: Theorem::Orbital,
        conditions,
        agree: conditions.iter().all(|&c| c == c1),
        skipped_axioms: skipped,
        notes: vec![COMPLETENESS_NOTE.into()],
        witness_subgroup: found.map(|h| h.elements().to_vec()),
        witness_set: None,
    })
}

/// Conditions: (1) `E` is pseudo-closed, (2) every class is pseudo-closed and
/// some pseudo-closed `X~` witnesses `E` with some subgroup, (3) some
/// pseudo-closed `H` and pseudo-closed `X~` witness `E`, (4) every maximal
/// witness group and every maximal witness set is pseudo-closed.
pub fn verify_thm_worb(s: &AgreeableStructure, e: &Partition, cfg: &VerifyConfig) -> Result<TheoremReport, LatticeError> {
    let skipped = require_agreeable(s, cfg)?;
    let action = s.action();
    let decider = DeciderConfig { subgroup_bound: cfg.subgroup_bound, parallel: false };
    match is_weakly_orbital(action, e, &decider) {
        Ok(Some(_)) => {}
        Ok(None) | Err(RelationError::NotInvariant) | Err(RelationError::ClassCrossesOrbit(_)) => {
            return Err(LatticeError::NotWeaklyOrbital)
        }
        Err(err) => return Err(err.into()),
    }
    let g = action.group();
    let lg = s.lattice(Slot::G);
    let lx = s.lattice(Slot::X);
    let c1 = s.lattice(Slot::XxX).contains(&e.pair_set());

    // For a fixed X~ the relation only grows with H, and with the maximal
    // group it never exceeds E, so X~ admits a witness group iff its maximal
    // group is one.
    let members = lx.members(cfg.max_lattice_members)?;
    let mut closed_set_witness = false;
    let mut closed_pair = None;
    for xt in members.iter().filter(|m| !m.is_clear()) {
        let h_max = maximal_witness_group(action, e, xt)?;
        if !witnesses(action, e, &h_max, xt) {
            continue;
        }
        closed_set_witness = true;
        let subgroups = enumerate_subgroups_within(g, &h_max, false, cfg.subgroup_bound)?;
        if let Some(h) = subgroups
            .into_iter()
            .find(|h| lg.contains(h.mask()) && witnesses(action, e, h, xt))
        {
            closed_pair = Some((h, xt.clone()));
            break;
        }
    }
    let c2 = classes_closed(s, e) && closed_set_witness;
    let c3 = closed_pair.is_some();

    // Maximal witness sets are the sets X~_H that witness with H; maximal
    // witness groups are the H with H = H_{X~_H} among those.
    let mut c4 = true;
    for h in enumerate_subgroups_within(g, &g.whole(), false, cfg.subgroup_bound)? {
        let xt = maximal_witness_set(action, e, &h)?;
        if !witnesses(action, e, &h, &xt) {
            continue;
        }
        if !lx.contains(&xt) {
            c4 = false;
            break;
        }
        if maximal_witness_group(action, e, &xt)? == h && !lg.contains(h.mask()) {
            c4 = false;
            break;
        }
    }
    let conditions = [c1, c2, c3, c4];
    let (witness_subgroup, witness_set) = match closed_pair {
        Some((h, xt)) => (Some(h.elements().to_vec()), Some(xt.ones().collect())),
        None => (None, None),
    };
    Ok(TheoremReport {
        theorem: Theorem::WeaklyOrbital,
        conditions,
        agree: conditions.iter().all(|&c| c == c1),
        skipped_axioms: skipped,
        notes: vec![COMPLETENESS_NOTE.into()],
        witness_subgroup,
        witness_set,
    })
}

/// If the class of `x` is pseudo-closed, is its setwise stabilizer pseudo-closed?
pub fn stabilizer_pseudo_closed_check(s: &AgreeableStructure, e: &Partition, x: usize) -> Result<bool, LatticeError> {
    let action = s.action();
    action.check_point(x).map_err(RelationError::from)?;
    if e.len() != action.domain() {
        return Err(RelationError::DomainMismatch { expected: action.domain(), found: e.len() }.into());
    }
    if !s.lattice(Slot::X).contains(&e.class_mask(x)) {
        return Err(LatticeError::HypothesisNotMet("the class is not pseudo-closed".into()));
    }
    let stab = action.class_stabilizer(e, x).map_err(RelationError::from)?;
    Ok(s.lattice(Slot::G).contains(stab.mask()))
}

/// If `E` is pseudo-closed, is `{x : x E h.x}` pseudo-closed?
pub fn hfix_pseudo_closed_check(s: &AgreeableStructure, e: &Relation, h: usize) -> Result<bool, LatticeError> {
    let action = s.action();
    action.group().check_element(h).map_err(RelationError::from)?;
    if e.size() != action.domain() {
        return Err(RelationError::DomainMismatch { expected: action.domain(), found: e.size() }.into());
    }
    if !s.lattice(Slot::XxX).contains(&e.pair_set()) {
        return Err(LatticeError::HypothesisNotMet("the relation is not pseudo-closed".into()));
    }
    let mut set = FixedBitSet::with_capacity(action.domain());
    for x in 0..action.domain() {
        if e.contains(x, action.act(h, x)) {
            set.insert(x);
        }
    }
    Ok(s.lattice(Slot::X).contains(&set))
}
