use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{closure_mask, Elem, FiniteGroup, GroupError, Subgroup};

/// Default bound on the order of the group whose subgroups are enumerated.
pub const DEFAULT_SUBGROUP_BOUND: usize = 2000;

/// All subgroups of `g`, or one representative per conjugacy class, sorted by
/// order and then lexicographically.
pub fn enumerate_subgroups(g: &FiniteGroup, up_to_conjugacy: bool) -> Result<Vec<Subgroup>, GroupError> {
    enumerate_subgroups_within(g, &g.whole(), up_to_conjugacy, DEFAULT_SUBGROUP_BOUND)
}

/// Subgroups of `within`. With `up_to_conjugacy`, one representative is kept
/// for every class of subgroups of `within` that are conjugate in `g`.
///
/// Every subgroup is generated by its cyclic subgroups of prime-power order, so
/// the search starts from the trivial group and joins one such cyclic subgroup
/// at a time.
pub fn enumerate_subgroups_within(
    g: &FiniteGroup,
    within: &Subgroup,
    up_to_conjugacy: bool,
    bound: usize,
) -> Result<Vec<Subgroup>, GroupError> {
    if within.order() > bound {
        return Err(GroupError::BoundExceeded { order: within.order(), bound });
    }
    let cyclic: Vec<Elem> = cyclic_generators(g, within, true);

    struct Found {
        mask: FixedBitSet,
        gens: Vec<Elem>,
    }
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let trivial = closure_mask(g, &[]);
    seen.insert(trivial.clone());
    let mut found = vec![Found { mask: trivial, gens: Vec::new() }];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for k in frontier {
            for &c in &cyclic {
                if found[k].mask.contains(c) {
                    continue;
                }
                let mut gens = found[k].gens.clone();
                gens.push(c);
                let mask = closure_mask(g, &gens);
                if seen.contains(&mask) {
                    continue;
                }
                let mask = if up_to_conjugacy {
                    // Conjugating by elements of `within` keeps the class inside `within`,
                    // so this dedup never loses a class.
                    let mut best = mask.clone();
                    for &s in within.elements() {
                        let conj = conjugate_mask(g, s, &mask);
                        if mask_order(&conj, &best) {
                            best = conj.clone();
                        }
                        seen.insert(conj);
                    }
                    best
                } else {
                    seen.insert(mask.clone());
                    mask
                };
                let gens = small_gens_from_mask(g, &mask);
                next.push(found.len());
                found.push(Found { mask, gens });
            }
        }
        frontier = next;
    }
    let mut subgroups: Vec<Subgroup> = found.into_iter().map(|f| Subgroup::from_mask(f.mask)).collect();
    subgroups.sort();
    if up_to_conjugacy && within.order() < g.order() {
        subgroups = merge_by_conjugacy(g, subgroups);
    }
    Ok(subgroups)
}

/// Cyclic subgroups of `within` together with the subgroups generated by two
/// of them. Used as a partial search space when `within` is too large for a
/// full enumeration.
pub fn restricted_subgroups_within(g: &FiniteGroup, within: &Subgroup) -> Vec<Subgroup> {
    let cyclic = cyclic_generators(g, within, false);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    let mut push = |mask: FixedBitSet| {
        if seen.insert(mask.clone()) {
            out.push(Subgroup::from_mask(mask));
        }
    };
    push(closure_mask(g, &[]));
    for &c in &cyclic {
        push(closure_mask(g, &[c]));
    }
    for (i, &a) in cyclic.iter().enumerate() {
        for &b in &cyclic[i + 1..] {
            push(closure_mask(g, &[a, b]));
        }
    }
    out.sort();
    merge_by_conjugacy(g, out)
}

/// All cyclic subgroups of `within`, sorted.
pub fn cyclic_subgroups(g: &FiniteGroup, within: &Subgroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = cyclic_generators(g, within, false)
        .into_iter()
        .map(|c| Subgroup::from_mask(closure_mask(g, &[c])))
        .collect();
    out.push(g.trivial_subgroup());
    out.sort();
    out
}

/// One generator per nontrivial cyclic subgroup of `within`, optionally only
/// for subgroups of prime-power order.
fn cyclic_generators(g: &FiniteGroup, within: &Subgroup, prime_power_only: bool) -> Vec<Elem> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut gens = Vec::new();
    for &x in within.elements() {
        if x == g.identity() {
            continue;
        }
        if prime_power_only && !is_prime_power(g.element_order(x)) {
            continue;
        }
        if seen.insert(closure_mask(g, &[x])) {
            gens.push(x);
        }
    }
    gens
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        return true;
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn conjugate_mask(g: &FiniteGroup, s: Elem, mask: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.order());
    for x in mask.ones() {
        out.insert(g.conj(s, x));
    }
    out
}

/// True when `a` precedes `b` in the subgroup order (size, then element list).
fn mask_order(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    let (ca, cb) = (a.count_ones(..), b.count_ones(..));
    ca < cb || (ca == cb && a.ones().lt(b.ones()))
}

fn small_gens_from_mask(g: &FiniteGroup, mask: &FixedBitSet) -> Vec<Elem> {
    g.small_generating_set(&Subgroup::from_mask(mask.clone()))
}

/// Keeps the first subgroup of every conjugacy class of `g` in a sorted list.
fn merge_by_conjugacy(g: &FiniteGroup, sorted: Vec<Subgroup>) -> Vec<Subgroup> {
    let mut covered: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    for h in sorted {
        if covered.contains(h.mask()) {
            continue;
        }
        for s in g.elements() {
            covered.insert(conjugate_mask(g, s, h.mask()));
        }
        out.push(h);
    }
    out
}
