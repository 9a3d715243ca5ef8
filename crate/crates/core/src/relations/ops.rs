use fixedbitset::FixedBitSet;

use super::{Partition, Relation, RelationError, WitnessPair};
use crate::action::{GAction, Point};
use crate::group::{Elem, Subgroup};

fn check_domain(action: &GAction, e: &Partition) -> Result<(), RelationError> {
    if e.len() != action.domain() {
        return Err(RelationError::DomainMismatch { expected: action.domain(), found: e.len() });
    }
    Ok(())
}

fn require_invariant(action: &GAction, e: &Partition) -> Result<(), RelationError> {
    if is_invariant(action, e)? {
        Ok(())
    } else {
        Err(RelationError::NotInvariant)
    }
}

/// Converts a list of points into a membership mask, checking ranges.
pub fn point_mask(action: &GAction, points: &[Point]) -> Result<FixedBitSet, RelationError> {
    let mut mask = FixedBitSet::with_capacity(action.domain());
    for &x in points {
        if x >= action.domain() {
            return Err(RelationError::PointOutOfRange(x));
        }
        mask.insert(x);
    }
    Ok(mask)
}

/// `x E y` implies `gx E gy`. Checked on generators: each must induce a
/// well-defined map on blocks.
pub fn is_invariant(action: &GAction, e: &Partition) -> Result<bool, RelationError> {
    check_domain(action, e)?;
    let mut image = vec![usize::MAX; e.block_count()];
    for &s in action.group().generators() {
        image.fill(usize::MAX);
        for x in 0..action.domain() {
            let b = e.block_of(x);
            let target = e.block_of(action.act(s, x));
            if image[b] == usize::MAX {
                image[b] = target;
            } else if image[b] != target {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The partition of the domain into `H`-orbits.
pub fn orbit_relation(action: &GAction, h: &Subgroup) -> Partition {
    let gens = action.group().small_generating_set(h);
    let mut parent: Vec<usize> = (0..action.domain()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &s in &gens {
        for x in 0..action.domain() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, action.act(s, x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let labels: Vec<usize> = (0..action.domain()).map(|x| find(&mut parent, x)).collect();
    Partition::from_labels(&labels)
}

/// `H_E = {g : x E gx for all x}`.
pub fn kernel_group(action: &GAction, e: &Partition) -> Result<Subgroup, RelationError> {
    require_invariant(action, e)?;
    let g = action.group();
    let elems: Vec<Elem> = g
        .elements()
        .filter(|&k| (0..action.domain()).all(|x| e.same_block(x, action.act(k, x))))
        .collect();
    Ok(g.subgroup_from_elements(&elems)?)
}

/// `Some(H_E)` when `E` is the orbit relation of `H_E`, which happens exactly
/// when `E` is orbital.
pub fn is_orbital(action: &GAction, e: &Partition) -> Result<Option<Subgroup>, RelationError> {
    let h = kernel_group(action, e)?;
    Ok((orbit_relation(action, &h) == *e).then_some(h))
}

/// The `R_{H,X~}`-successors of `x0`: the union of `g^-1 H g . x0` over all
/// `g` with `g.x0` in `X~`.
pub fn r_successors(action: &GAction, h: &Subgroup, xt: &FixedBitSet, x0: Point) -> FixedBitSet {
    let g = action.group();
    let mut out = FixedBitSet::with_capacity(action.domain());
    for a in g.elements() {
        let y = action.act(a, x0);
        if !xt.contains(y) {
            continue;
        }
        let a_inv = g.inv(a);
        for &k in h.elements() {
            out.insert(action.act(a_inv, action.act(k, y)));
        }
    }
    out
}

/// The full relation `R_{H,X~}`. Successor sets are computed at one point per
/// orbit and transported along the orbit transversal, using invariance.
pub fn r_relation(action: &GAction, h: &Subgroup, xt: &[Point]) -> Result<Relation, RelationError> {
    let mask = point_mask(action, xt)?;
    let data = action.orbit_data();
    let base: Vec<FixedBitSet> = data.reps.iter().map(|&r| r_successors(action, h, &mask, r)).collect();
    let mut rel = Relation::empty(action.domain());
    for x in 0..action.domain() {
        let t = data.transversal[x];
        let mut row = FixedBitSet::with_capacity(action.domain());
        for z in base[data.orbit_of[x]].ones() {
            row.insert(action.act(t, z));
        }
        rel.set_successors(x, row);
    }
    Ok(rel)
}

/// `R_{H,X~} = E` for an invariant `E`. Both sides are invariant, so equality
/// is decided at one point per orbit.
pub fn witnesses(action: &GAction, e: &Partition, h: &Subgroup, xt: &FixedBitSet) -> bool {
    let data = action.orbit_data();
    data.reps
        .iter()
        .all(|&r| r_successors(action, h, xt, r) == e.class_mask(r))
}

/// The largest `X~` for which `H` could witness `E`: `{x : x E hx for all h in H}`.
pub fn maximal_witness_set(action: &GAction, e: &Partition, h: &Subgroup) -> Result<FixedBitSet, RelationError> {
    require_invariant(action, e)?;
    let gens = action.group().small_generating_set(h);
    let mut out = FixedBitSet::with_capacity(action.domain());
    for x in 0..action.domain() {
        if gens.iter().all(|&k| e.same_block(x, action.act(k, x))) {
            out.insert(x);
        }
    }
    Ok(out)
}

/// The largest `H` for which `X~` could witness `E`: `{g : x E gx for all x in X~}`.
pub fn maximal_witness_group(action: &GAction, e: &Partition, xt: &FixedBitSet) -> Result<Subgroup, RelationError> {
    require_invariant(action, e)?;
    let g = action.group();
    let points: Vec<Point> = xt.ones().collect();
    let elems: Vec<Elem> = g
        .elements()
        .filter(|&k| points.iter().all(|&x| e.same_block(x, action.act(k, x))))
        .collect();
    Ok(g.subgroup_from_elements(&elems)?)
}

fn require_witness(action: &GAction, e: &Partition, h: &Subgroup, xt: &FixedBitSet) -> Result<(), RelationError> {
    require_invariant(action, e)?;
    if xt.is_clear() && action.domain() > 0 {
        return Err(RelationError::EmptyWitnessSet);
    }
    if !witnesses(action, e, h, xt) {
        return Err(RelationError::WitnessMismatch);
    }
    Ok(())
}

fn pair(action: &GAction, e: &Partition, h: Subgroup, xt: FixedBitSet) -> Result<WitnessPair, RelationError> {
    let set_maximal = maximal_witness_set(action, e, &h)? == xt;
    let subgroup_maximal = maximal_witness_group(action, e, &xt)? == h;
    Ok(WitnessPair { subgroup: h, witness_set: xt.ones().collect(), subgroup_maximal, set_maximal })
}

/// Maximal pair obtained by enlarging the set first: `X' = X~_H`, then `H' = H_{X'}`.
pub fn maximal_pair(action: &GAction, e: &Partition, h: &Subgroup, xt: &[Point]) -> Result<WitnessPair, RelationError> {
    let mask = point_mask(action, xt)?;
    require_witness(action, e, h, &mask)?;
    let set = maximal_witness_set(action, e, h)?;
    let group = maximal_witness_group(action, e, &set)?;
    pair(action, e, group, set)
}

/// Maximal pair obtained by enlarging the group first: `H' = H_{X~}`, then `X' = X~_{H'}`.
pub fn maximal_pair_group_first(
    action: &GAction,
    e: &Partition,
    h: &Subgroup,
    xt: &[Point],
) -> Result<WitnessPair, RelationError> {
    let mask = point_mask(action, xt)?;
    require_witness(action, e, h, &mask)?;
    let group = maximal_witness_group(action, e, &mask)?;
    let set = maximal_witness_set(action, e, &group)?;
    pair(action, e, group, set)
}

/// For a transitive action, `(Stab[x]_E, {x})` witnesses every invariant `E`.
pub fn transitive_witness(action: &GAction, e: &Partition, x: Point) -> Result<WitnessPair, RelationError> {
    require_invariant(action, e)?;
    if !action.is_transitive() {
        return Err(RelationError::NotTransitive);
    }
    let h = action.class_stabilizer(e, x)?;
    let mask = point_mask(action, &[x])?;
    if !witnesses(action, e, &h, &mask) {
        return Err(RelationError::WitnessMismatch);
    }
    pair(action, e, h, mask)
}

/// Orbitality through the witness set `X~ = X`: `E` is orbital exactly when
/// `(H_X, X)` witnesses it.
pub fn orbital_via_full_witness(action: &GAction, e: &Partition) -> Result<bool, RelationError> {
    require_invariant(action, e)?;
    let mut all = FixedBitSet::with_capacity(action.domain());
    all.insert_range(..);
    let h = maximal_witness_group(action, e, &all)?;
    Ok(witnesses(action, e, &h, &all))
}

/// Searches witness sets that meet every orbit in exactly one point, each with
/// its maximal group. With `pin`, the orbit of `pin` is represented by `pin`.
/// Fails with `BudgetExceeded` when the number of candidates exceeds `budget`.
pub fn transversal_witness_search(
    action: &GAction,
    e: &Partition,
    pin: Option<Point>,
    budget: u128,
) -> Result<Option<WitnessPair>, RelationError> {
    require_invariant(action, e)?;
    if let Some(p) = pin {
        action.check_point(p)?;
    }
    let data = action.orbit_data();
    let choices: Vec<Vec<Point>> = (0..data.count())
        .map(|o| match pin {
            Some(p) if data.orbit_of[p] == o => vec![p],
            _ => data.members(o).collect(),
        })
        .collect();
    let size = choices.iter().map(|c| c.len() as u128).product::<u128>();
    if size > budget {
        return Err(RelationError::BudgetExceeded { size, budget });
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let set: Vec<Point> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let mask = point_mask(action, &set)?;
        let h = maximal_witness_group(action, e, &mask)?;
        if witnesses(action, e, &h, &mask) {
            return pair(action, e, h, mask).map(Some);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::library;

    fn z(n: usize) -> GAction {
        GAction::regular(Arc::new(library::cyclic(n)))
    }

    #[test]
    fn invariance_on_z4() {
        let a = z(4);
        assert!(is_invariant(&a, &Partition::from_labels(&[0, 1, 0, 1])).unwrap());
        assert!(!is_invariant(&a, &Partition::from_labels(&[0, 0, 1, 2])).unwrap());
        assert!(is_invariant(&a, &Partition::from_labels(&[0, 0])).is_err());
    }

    #[test]
    fn orbital_on_z6() {
        let a = z(6);
        let e = Partition::from_labels(&[0, 1, 2, 0, 1, 2]);
        let h = is_orbital(&a, &e).unwrap().unwrap();
        assert_eq!(h.elements(), &[0, 3]);
        assert!(orbital_via_full_witness(&a, &e).unwrap());
    }

    #[test]
    fn antipodal_style_relation_is_not_orbital() {
        // S3 acting on itself; classes are left cosets of <(01)>, which is not normal.
        let s3 = Arc::new(library::s3().into_group());
        let a = GAction::regular(s3.clone());
        let h = s3.subgroup_closure(&[1]).unwrap();
        let labels: Vec<usize> = (0..6).map(|g| (0..6).filter(|&k| h.contains(k)).map(|k| s3.mul(g, k)).min().unwrap()).collect();
        let e = Partition::from_labels(&labels);
        assert!(is_invariant(&a, &e).unwrap());
        assert!(is_orbital(&a, &e).unwrap().is_none());
        assert!(!orbital_via_full_witness(&a, &e).unwrap());
        let w = transitive_witness(&a, &e, 0).unwrap();
        assert_eq!(w.subgroup, h);
        let r = r_relation(&a, &w.subgroup, &w.witness_set).unwrap();
        assert_eq!(r.to_partition().unwrap(), e);
    }

    #[test]
    fn transversal_search_enumerates_all_sections() {
        let a = z(3).disjoint_union(&z(3)).unwrap();
        let e = Partition::discrete(6);
        let w = transversal_witness_search(&a, &e, None, 100).unwrap().unwrap();
        assert!(w.subgroup.is_trivial());
        assert!(matches!(
            transversal_witness_search(&a, &e, None, 5),
            Err(RelationError::BudgetExceeded { size: 9, budget: 5 })
        ));
    }
}
