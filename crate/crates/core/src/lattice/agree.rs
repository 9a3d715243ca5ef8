//! The six agreeability axioms, evaluated exhaustively.
//!
//! Every axiom asks that certain sets built from members of one lattice be
//! members of another. The constructions involved (sections, preimages, and
//! images of unions) commute with unions, so it is enough to feed them the
//! principal down-sets; this turns each axiom into a finite list of
//! requirements.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{AgreeableStructure, SetLattice, Slot};
use crate::action::GAction;

#[derive(Clone, Debug)]
pub struct AgreeConfig {
    /// Axiom (5) quantifies over `(X x X)^2`; it is skipped when `|X|` exceeds this.
    pub max_quartic_domain: usize,
}

impl Default for AgreeConfig {
    fn default() -> Self {
        AgreeConfig { max_quartic_domain: 6 }
    }
}

/// A set that some axiom requires to be pseudo-closed but is not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    /// The lattice whose principal down-set (at `source_point`) was used.
    pub source: Slot,
    pub source_point: usize,
    /// Extra coordinate of the construction (a section coordinate, a group
    /// element, or the second rectangle factor).
    pub parameter: Option<usize>,
    pub construction: String,
    pub target: Slot,
    pub required_set: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AxiomStatus {
    Pass,
    Fail { witness: AxiomWitness },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub axiom: u8,
    pub name: &'static str,
    pub status: AxiomStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreeabilityReport {
    pub axioms: Vec<AxiomOutcome>,
}

impl AgreeabilityReport {
    /// Every axiom was evaluated and holds.
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.status == AxiomStatus::Pass)
    }

    /// No evaluated axiom fails (skipped axioms are allowed).
    pub fn no_failures(&self) -> bool {
        self.failed().is_empty()
    }

    pub fn failed(&self) -> Vec<u8> {
        self.axioms
            .iter()
            .filter(|a| matches!(a.status, AxiomStatus::Fail { .. }))
            .map(|a| a.axiom)
            .collect()
    }

    pub fn skipped(&self) -> Vec<u8> {
        self.axioms
            .iter()
            .filter(|a| matches!(a.status, AxiomStatus::Skipped { .. }))
            .map(|a| a.axiom)
            .collect()
    }

    pub fn witness(&self, axiom: u8) -> Option<&AxiomWitness> {
        self.axioms.iter().find(|a| a.axiom == axiom).and_then(|a| match &a.status {
            AxiomStatus::Fail { witness } => Some(witness),
            _ => None,
        })
    }
}

pub const AXIOM_NAMES: [&str; 6] = [
    "sections",
    "products",
    "action map",
    "graph maps",
    "diagonal projection",
    "graph images",
];

/// One set that must be pseudo-closed in `target`.
pub(crate) struct Requirement {
    source: Slot,
    source_point: usize,
    parameter: Option<usize>,
    construction: &'static str,
    set: FixedBitSet,
    target: Slot,
}

type Emit<'a> = dyn FnMut(Requirement) -> ControlFlow<()> + 'a;

/// Evaluates all six axioms, reporting the first violation of each.
pub fn check_agreeable(s: &AgreeableStructure, cfg: &AgreeConfig) -> AgreeabilityReport {
    let axioms = (1..=6u8)
        .map(|k| {
            let status = if k == 5 && s.action().domain() > cfg.max_quartic_domain {
                AxiomStatus::Skipped {
                    reason: format!(
                        "|X| = {} exceeds the cap {} for (X x X)^2",
                        s.action().domain(),
                        cfg.max_quartic_domain
                    ),
                }
            } else {
                run_axiom(s, k)
            };
            AxiomOutcome { axiom: k, name: AXIOM_NAMES[k as usize - 1], status }
        })
        .collect();
    AgreeabilityReport { axioms }
}

fn run_axiom(s: &AgreeableStructure, k: u8) -> AxiomStatus {
    let mut failure: Option<Requirement> = None;
    let mut emit = |r: Requirement| {
        if s.lattice(r.target).contains(&r.set) {
            ControlFlow::Continue(())
        } else {
            failure = Some(r);
            ControlFlow::Break(())
        }
    };
    let _ = requirements(s, k, &mut emit);
    match failure {
        None => AxiomStatus::Pass,
        Some(r) => AxiomStatus::Fail {
            witness: AxiomWitness {
                source: r.source,
                source_point: r.source_point,
                parameter: r.parameter,
                construction: r.construction.to_string(),
                target: r.target,
                required_set: r.set.ones().collect(),
            },
        },
    }
}

fn requirements(s: &AgreeableStructure, k: u8, emit: &mut Emit<'_>) -> ControlFlow<()> {
    let action = s.action();
    match k {
        1 => {
            for slot in [Slot::GxX, Slot::XxX, Slot::XxG, Slot::X2xX2] {
                let (_, b) = slot.factors().expect("product slot");
                let nb = s.lattice(b).universe();
                sections(s.lattice(slot), nb, slot, emit)?;
            }
            ControlFlow::Continue(())
        }
        2 => {
            for slot in [Slot::GxX, Slot::XxX, Slot::XxG, Slot::X2xX2] {
                let (a, b) = slot.factors().expect("product slot");
                rectangle_requirements(s.lattice(a), s.lattice(b), slot, emit)?;
            }
            ControlFlow::Continue(())
        }
        3 => preimage_requirements(action, s.lattice(Slot::X), emit),
        4 => graph_preimage_requirements(action, s.lattice(Slot::XxX), emit),
        5 => projection_requirements(action, s.lattice(Slot::X2xX2), &pair_orbit_set(action), emit),
        6 => graph_image_requirements(action, s.lattice(Slot::XxG), emit),
        _ => unreachable!("there are six axioms"),
    }
}

/// Sections of principal down-sets of a product lattice, at every first and
/// every second coordinate.
fn sections(l: &SetLattice, nb: usize, slot: Slot, emit: &mut Emit<'_>) -> ControlFlow<()> {
    let (a_slot, b_slot) = slot.factors().expect("product slot");
    let na = if nb == 0 { 0 } else { l.universe() / nb };
    for p in 0..l.universe() {
        let d = l.down_set(p);
        let mut firsts: BTreeMap<usize, FixedBitSet> = BTreeMap::new();
        let mut seconds: BTreeMap<usize, FixedBitSet> = BTreeMap::new();
        for q in d.ones() {
            let (a, b) = (q / nb, q % nb);
            firsts.entry(a).or_insert_with(|| FixedBitSet::with_capacity(nb)).insert(b);
            seconds.entry(b).or_insert_with(|| FixedBitSet::with_capacity(na)).insert(a);
        }
        for (a, set) in firsts {
            emit(Requirement {
                source: slot,
                source_point: p,
                parameter: Some(a),
                construction: "section at a fixed first coordinate",
                set,
                target: b_slot,
            })?;
        }
        for (b, set) in seconds {
            emit(Requirement {
                source: slot,
                source_point: p,
                parameter: Some(b),
                construction: "section at a fixed second coordinate",
                set,
                target: a_slot,
            })?;
        }
    }
    ControlFlow::Continue(())
}

fn rectangle_requirements(la: &SetLattice, lb: &SetLattice, target: Slot, emit: &mut Emit<'_>) -> ControlFlow<()> {
    let nb = lb.universe();
    let right: Vec<FixedBitSet> = lb.principal_sets();
    for a in 0..la.universe() {
        let da = la.down_set(a);
        for (b, db) in right.iter().enumerate() {
            let mut set = FixedBitSet::with_capacity(la.universe() * nb);
            for x in da.ones() {
                for y in db.ones() {
                    set.insert(x * nb + y);
                }
            }
            emit(Requirement {
                source: target,
                source_point: a,
                parameter: Some(b),
                construction: "product of two principal sets",
                set,
                target,
            })?;
        }
    }
    ControlFlow::Continue(())
}

/// `{(g, x) : g.x in D_X(y)}`.
fn preimage_requirements(action: &GAction, lx: &SetLattice, emit: &mut Emit<'_>) -> ControlFlow<()> {
    let (n, m) = (action.group().order(), action.domain());
    for y in 0..m {
        let d = lx.down_set(y);
        let mut set = FixedBitSet::with_capacity(n * m);
        for g in 0..n {
            for x in 0..m {
                if d.contains(action.act(g, x)) {
                    set.insert(g * m + x);
                }
            }
        }
        emit(Requirement {
            source: Slot::X,
            source_point: y,
            parameter: None,
            construction: "preimage under (g, x) -> g.x",
            set,
            target: Slot::GxX,
        })?;
    }
    ControlFlow::Continue(())
}

/// `{x : (x, g.x) in D_XxX(p)}` for every `g`.
fn graph_preimage_requirements(action: &GAction, lxx: &SetLattice, emit: &mut Emit<'_>) -> ControlFlow<()> {
    let (n, m) = (action.group().order(), action.domain());
    for p in 0..m * m {
        let d = lxx.down_set(p);
        for g in 0..n {
            let mut set = FixedBitSet::with_capacity(m);
            for x in 0..m {
                if d.contains(x * m + action.act(g, x)) {
                    set.insert(x);
                }
            }
            emit(Requirement {
                source: Slot::XxX,
                source_point: p,
                parameter: Some(g),
                construction: "preimage under x -> (x, g.x)",
                set,
                target: Slot::X,
            })?;
        }
    }
    ControlFlow::Continue(())
}

/// First-factor projection of `D(q)` intersected with the diagonal orbit relation on `X x X`.
fn projection_requirements(
    action: &GAction,
    lx2x2: &SetLattice,
    pair_orbits: &FixedBitSet,
    emit: &mut Emit<'_>,
) -> ControlFlow<()> {
    let m2 = action.domain() * action.domain();
    for q in 0..lx2x2.universe() {
        let d = lx2x2.down_set(q);
        let mut set = FixedBitSet::with_capacity(m2);
        for r in d.ones() {
            if pair_orbits.contains(r) {
                set.insert(r / m2);
            }
        }
        emit(Requirement {
            source: Slot::X2xX2,
            source_point: q,
            parameter: None,
            construction: "projection of the part lying in one diagonal orbit",
            set,
            target: Slot::XxX,
        })?;
    }
    ControlFlow::Continue(())
}

/// `{(x, g.x) : (x, g) in D_XxG(p)}`.
fn graph_image_requirements(action: &GAction, lxg: &SetLattice, emit: &mut Emit<'_>) -> ControlFlow<()> {
    let (n, m) = (action.group().order(), action.domain());
    for p in 0..m * n {
        let d = lxg.down_set(p);
        let mut set = FixedBitSet::with_capacity(m * m);
        for r in d.ones() {
            let (x, g) = (r / n, r % n);
            set.insert(x * m + action.act(g, x));
        }
        emit(Requirement {
            source: Slot::XxG,
            source_point: p,
            parameter: None,
            construction: "image under (x, g) -> (x, g.x)",
            set,
            target: Slot::XxX,
        })?;
    }
    ControlFlow::Continue(())
}

fn collect(f: impl FnOnce(&mut Emit<'_>) -> ControlFlow<()>) -> Vec<FixedBitSet> {
    let mut out = Vec::new();
    let mut emit = |r: Requirement| {
        out.push(r.set);
        ControlFlow::Continue(())
    };
    let _ = f(&mut emit);
    out
}

pub(crate) fn rectangles(la: &SetLattice, lb: &SetLattice) -> Vec<FixedBitSet> {
    collect(|e| rectangle_requirements(la, lb, Slot::GxX, e))
}

pub(crate) fn action_preimages(action: &GAction, lx: &SetLattice) -> Vec<FixedBitSet> {
    collect(|e| preimage_requirements(action, lx, e))
}

pub(crate) fn graph_images(action: &GAction, lxg: &SetLattice) -> Vec<FixedBitSet> {
    collect(|e| graph_image_requirements(action, lxg, e))
}

pub(crate) fn projection_images(action: &GAction, lx2x2: &SetLattice, pair_orbits: &FixedBitSet) -> Vec<FixedBitSet> {
    collect(|e| projection_requirements(action, lx2x2, pair_orbits, e))
}

/// The relation "same diagonal orbit" on `X x X`, as a subset of `(X x X)^2`.
pub fn pair_orbit_set(action: &GAction) -> FixedBitSet {
    let m2 = action.domain() * action.domain();
    let pairs = action.on_pairs();
    let mut set = FixedBitSet::with_capacity(m2 * m2);
    for p in 0..m2 {
        for g in action.group().elements() {
            set.insert(p * m2 + pairs.act(g, p));
        }
    }
    set
}
