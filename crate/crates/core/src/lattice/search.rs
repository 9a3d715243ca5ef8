//! Random agreeable structures and a seeded search for relations whose
//! pseudo-closedness properties come apart.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::agree::{check_agreeable, AgreeConfig};
use super::{quotient_separated, AgreeableStructure, SetLattice, Slot};
use crate::action::GAction;
use crate::group::{enumerate_subgroups, library, FiniteGroup};
use crate::relations::{is_invariant, is_orbital, is_weakly_orbital, DeciderConfig, Partition};

/// Which invariant relations a search looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationScope {
    Orbital,
    WeaklyOrbital,
    Invariant,
}

#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub seed: u64,
    pub samples: usize,
    pub max_group_order: usize,
    pub max_domain: usize,
    pub scope: RelationScope,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { seed: 0, samples: 200, max_group_order: 6, max_domain: 5, scope: RelationScope::Invariant }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Every class is pseudo-closed but the relation is not.
    ClassesClosedRelationNot,
    /// The relation is pseudo-closed and weakly orbital, but its classes
    /// cannot be separated by invariant pseudo-closed sets.
    ClosedButNotSeparated,
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub sample: usize,
    pub sample_seed: u64,
    pub target: Target,
    pub structure: AgreeableStructure,
    pub relation: Partition,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub hit: Option<SearchHit>,
    pub samples: usize,
    pub relations_examined: usize,
}

/// Seed of sample `i`; independent of thread scheduling.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random action: a disjoint union of coset spaces with at most
/// `max_domain` points, randomly relabeled.
pub fn random_action(rng: &mut ChaCha8Rng, group: Arc<FiniteGroup>, max_domain: usize) -> GAction {
    let subgroups = enumerate_subgroups(&group, false).expect("small group");
    let mut action: Option<GAction> = None;
    let mut used = 0;
    loop {
        let fitting: Vec<_> = subgroups.iter().filter(|h| group.index(h) + used <= max_domain).collect();
        if fitting.is_empty() {
            break;
        }
        let h = fitting.choose(rng).expect("nonempty");
        let orbit = GAction::on_cosets(group.clone(), h);
        used += orbit.domain();
        action = Some(match action {
            None => orbit,
            Some(a) => a.disjoint_union(&orbit).expect("same group"),
        });
        if rng.gen_bool(0.45) {
            break;
        }
    }
    let action = action.unwrap_or_else(|| GAction::trivial(group.clone(), 1));
    let mut relabel: Vec<usize> = (0..action.domain()).collect();
    relabel.shuffle(rng);
    action.relabeled(&relabel).expect("bijection")
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for p in 0..n {
        if rng.gen_bool(0.4) {
            s.insert(p);
        }
    }
    s
}

/// Lattices on `G` and `X` from a random recipe; not necessarily extendable.
fn random_base_lattices(rng: &mut ChaCha8Rng, action: &GAction) -> (SetLattice, SetLattice) {
    let g = action.group();
    let (n, m) = (g.order(), action.domain());
    // L_X: closure of the translates of a few random sets, so that sections
    // of the action preimages stay inside it.
    let mut x_gens = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let s = random_subset(rng, m);
        for k in g.elements() {
            let mut t = FixedBitSet::with_capacity(m);
            for x in s.ones() {
                t.insert(action.act(k, x));
            }
            x_gens.push(t);
        }
    }
    let lx = SetLattice::family_closure(m, &x_gens).expect("in range");
    // L_G: the transporter sets {g : g.x in D(y)} plus some random sets.
    let mut g_gens = Vec::new();
    for y in 0..m {
        let d = lx.down_set(y);
        for x in 0..m {
            let mut t = FixedBitSet::with_capacity(n);
            for k in g.elements() {
                if d.contains(action.act(k, x)) {
                    t.insert(k);
                }
            }
            g_gens.push(t);
        }
    }
    for _ in 0..rng.gen_range(0..=1) {
        g_gens.push(random_subset(rng, n));
    }
    let lg = SetLattice::family_closure(n, &g_gens).expect("in range");
    (lg, lx)
}

/// A random agreeable structure with `|G| <= max_group_order` and `|X| <= max_domain`.
///
/// Recipes: all-discrete, the quotient by a random normal subgroup, and the
/// minimal completion of random base lattices (retried until agreeable,
/// falling back to a quotient).
pub fn sample_structure(rng: &mut ChaCha8Rng, max_group_order: usize, max_domain: usize) -> AgreeableStructure {
    let groups = library::small_groups(max_group_order);
    let (_, group) = groups.choose(rng).expect("at least the trivial group");
    let group = Arc::new(group.clone());
    let action = random_action(rng, group.clone(), max_domain);
    let quotient = |rng: &mut ChaCha8Rng| {
        let normal: Vec<_> = enumerate_subgroups(&group, false)
            .expect("small group")
            .into_iter()
            .filter(|k| group.is_normal(k))
            .collect();
        let k = normal.choose(rng).expect("the trivial subgroup is normal");
        AgreeableStructure::quotient(action.clone(), k).expect("normal subgroup")
    };
    let cfg = AgreeConfig { max_quartic_domain: max_domain };
    match rng.gen_range(0..10) {
        0 => AgreeableStructure::discrete(action),
        1..=3 => quotient(rng),
        _ => {
            for _ in 0..20 {
                let (lg, lx) = random_base_lattices(rng, &action);
                let s = AgreeableStructure::minimal_completion(action.clone(), lg, lx).expect("universes match");
                if check_agreeable(&s, &cfg).all_pass() {
                    return s;
                }
            }
            quotient(rng)
        }
    }
}

fn in_scope(action: &GAction, e: &Partition, scope: RelationScope) -> bool {
    if !is_invariant(action, e).unwrap_or(false) {
        return false;
    }
    match scope {
        RelationScope::Invariant => true,
        RelationScope::Orbital => is_orbital(action, e).ok().flatten().is_some(),
        RelationScope::WeaklyOrbital => {
            let cfg = DeciderConfig { parallel: false, ..DeciderConfig::default() };
            matches!(is_weakly_orbital(action, e, &cfg), Ok(Some(_)))
        }
    }
}

fn examine(s: &AgreeableStructure, e: &Partition) -> Option<Target> {
    let lx = s.lattice(Slot::X);
    let classes = e.blocks().iter().all(|b| lx.contains(&e.class_mask(b[0])));
    let closed = s.lattice(Slot::XxX).contains(&e.pair_set());
    if classes && !closed {
        return Some(Target::ClassesClosedRelationNot);
    }
    if closed {
        let cfg = DeciderConfig { parallel: false, ..DeciderConfig::default() };
        let worb = matches!(is_weakly_orbital(s.action(), e, &cfg), Ok(Some(_)));
        if worb && !quotient_separated(s, e).unwrap_or(true) {
            return Some(Target::ClosedButNotSeparated);
        }
    }
    None
}

/// Samples agreeable structures and tests every invariant relation in scope
/// against both targets. Returns the first hit in sample order.
pub fn search_counterexample(budget: &SearchBudget) -> SearchOutcome {
    let results: Vec<(usize, Option<SearchHit>)> = (0..budget.samples)
        .into_par_iter()
        .map(|i| {
            let seed = sample_seed(budget.seed, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = sample_structure(&mut rng, budget.max_group_order, budget.max_domain);
            let mut examined = 0;
            for e in Partition::all(s.action().domain()) {
                if !in_scope(s.action(), &e, budget.scope) {
                    continue;
                }
                examined += 1;
                if let Some(target) = examine(&s, &e) {
                    let hit = SearchHit { sample: i, sample_seed: seed, target, structure: s, relation: e };
                    return (examined, Some(hit));
                }
            }
            (examined, None)
        })
        .collect();
    let relations_examined = results.iter().map(|(k, _)| k).sum();
    let hit = results.into_iter().find_map(|(_, h)| h);
    SearchOutcome { hit, samples: budget.samples, relations_examined }
}
