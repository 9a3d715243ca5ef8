//! Brute-force oracles and instance generators shared by the integration tests.
//! Nothing here calls the algorithms under test except for constructing inputs.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use invrel_core::group::{enumerate_subgroups, library};
use invrel_core::{FiniteGroup, GAction, Partition, Subgroup};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Every action of every small group with `|G| <= max_group` on at most
/// `max_domain` points, up to isomorphism: one action per multiset of
/// conjugacy classes of point stabilizers.
pub fn all_small_actions(max_group: usize, max_domain: usize) -> Vec<(String, GAction)> {
    let mut out = Vec::new();
    for (name, group) in library::small_groups(max_group) {
        let group = Arc::new(group);
        let classes = enumerate_subgroups(&group, true).unwrap();
        let indices: Vec<usize> = classes.iter().map(|h| group.index(h)).collect();
        let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(0, Vec::new(), 0)];
        while let Some((start, chosen, used)) = stack.pop() {
            if !chosen.is_empty() {
                let mut action = GAction::on_cosets(group.clone(), &classes[chosen[0]]);
                for &c in &chosen[1..] {
                    action = action.disjoint_union(&GAction::on_cosets(group.clone(), &classes[c])).unwrap();
                }
                out.push((format!("{name} on {chosen:?}"), action));
            }
            for c in start..classes.len() {
                if used + indices[c] <= max_domain {
                    let mut next = chosen.clone();
                    next.push(c);
                    stack.push((c, next, used + indices[c]));
                }
            }
        }
    }
    out
}

/// Pairs `(x, y)` with `x` related to `y`, as a sorted set.
pub type Pairs = BTreeSet<(usize, usize)>;

/// Smallest invariant relation containing `(x~, h.x~)`: the `G`-orbits of the
/// generating pairs.
pub fn oracle_r(action: &GAction, h: &[usize], xt: &[usize]) -> Pairs {
    let mut out = Pairs::new();
    for &x in xt {
        for &k in h {
            let y = action.act(k, x);
            for g in action.group().elements() {
                out.insert((action.act(g, x), action.act(g, y)));
            }
        }
    }
    out
}

pub fn partition_pairs(e: &Partition) -> Pairs {
    let n = e.len();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| e.same_block(a, b)).collect()
}

pub fn is_equivalence(n: usize, r: &Pairs) -> bool {
    (0..n).all(|a| r.contains(&(a, a)))
        && r.iter().all(|&(a, b)| r.contains(&(b, a)))
        && r.iter().all(|&(a, b)| (0..n).all(|c| !r.contains(&(b, c)) || r.contains(&(a, c))))
}

pub fn pairs_to_partition(n: usize, r: &Pairs) -> Partition {
    let labels: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| r.contains(&(a, b))).unwrap_or(a)).collect();
    Partition::from_labels(&labels)
}

pub fn oracle_invariant(action: &GAction, e: &Partition) -> bool {
    let n = action.domain();
    action.group().elements().all(|g| {
        (0..n).all(|a| (0..n).all(|b| e.same_block(a, b) == e.same_block(action.act(g, a), action.act(g, b))))
    })
}

/// `E_H` by repeated application of the elements of `h` until nothing changes.
pub fn oracle_orbit_relation(action: &GAction, h: &[usize]) -> Partition {
    let n = action.domain();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            for &k in h {
                let y = action.act(k, x);
                let m = label[x].min(label[y]);
                if label[x] != m || label[y] != m {
                    let (old_x, old_y) = (label[x], label[y]);
                    for l in label.iter_mut() {
                        if *l == old_x || *l == old_y {
                            *l = m;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return Partition::from_labels(&label);
        }
    }
}

/// Elements that map every class onto itself.
pub fn oracle_kernel(action: &GAction, e: &Partition) -> Vec<usize> {
    action
        .group()
        .elements()
        .filter(|&g| (0..action.domain()).all(|x| e.same_block(x, action.act(g, x))))
        .collect()
}

/// Subgroups of a group of order at most 10 by testing every subset.
pub fn oracle_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    assert!(n <= 10);
    let mut out = Vec::new();
    for bits in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).collect();
        if !set.contains(&g.identity()) {
            continue;
        }
        if set.iter().all(|&a| set.iter().all(|&b| bits >> g.mul(a, b) & 1 == 1)) {
            out.push(set);
        }
    }
    out
}

pub fn oracle_is_normal(g: &FiniteGroup, h: &[usize]) -> bool {
    g.elements().all(|x| h.iter().all(|&k| h.contains(&g.mul(g.mul(x, k), g.inv(x)))))
}

/// A random subgroup (closure of up to two random elements).
pub fn random_subgroup(rng: &mut ChaCha8Rng, g: &FiniteGroup) -> Subgroup {
    let k = rng.gen_range(0..=2);
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.order())).collect();
    g.subgroup_closure(&gens).unwrap()
}

/// A random nonempty subset of `0..n`.
pub fn random_nonempty_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let p = rng.gen_range(0.1..0.7);
    let mut s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
    if s.is_empty() {
        s.push(rng.gen_range(0..n));
    }
    s
}

/// A random action drawn from a pool such as [`all_small_actions`].
pub fn random_action(rng: &mut ChaCha8Rng, pool: &[(String, GAction)]) -> GAction {
    pool.choose(rng).unwrap().1.clone()
}
