//! Finite groups stored as multiplication tables, with subgroup machinery.

mod enumerate;
pub mod library;
mod perm;

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use enumerate::{
    cyclic_subgroups, enumerate_subgroups, enumerate_subgroups_within,
    restricted_subgroups_within, DEFAULT_SUBGROUP_BOUND,
};
pub use perm::PermGroup;

/// Index of a group element inside its multiplication table.
pub type Elem = usize;

/// Largest order accepted when a multiplication table has to be materialized.
pub const MAX_TABLE_ORDER: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("order {order} exceeds the bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

/// A finite group given by its full multiplication table.
///
/// Elements are the integers `0..order`. The table is validated on
/// construction: two-sided identity, two-sided inverses, and associativity
/// (Light's test over a generating set).
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    identity: Elem,
    inverse: Vec<u32>,
    generators: Vec<Elem>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mult == other.mult
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a square table where `rows[a][b]` is the product `ab`.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty multiplication table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::BoundExceeded { order: n, bound: MAX_TABLE_ORDER });
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(GroupError::NotAGroup(format!("row {i} contains entry {v} >= {n}")));
                }
                mult.push(v as u32);
            }
        }
        Self::from_flat(n, mult)
    }

    /// Builds a group from a row-major table of length `n * n`.
    pub(crate) fn from_flat(n: usize, mult: Vec<u32>) -> Result<Self, GroupError> {
        debug_assert_eq!(mult.len(), n * n);
        let m = |a: usize, b: usize| mult[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| m(a, b) == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no right inverse")))?;
            if m(b, a) != identity {
                return Err(GroupError::NotAGroup(format!("element {a} has no two-sided inverse")));
            }
            inverse[a] = b as u32;
        }
        for g in magma_generators(n, &mult) {
            for a in 0..n {
                let ag = m(a, g);
                for b in 0..n {
                    if m(ag, b) != m(a, m(g, b)) {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails for ({a}, {g}, {b})"
                        )));
                    }
                }
            }
        }
        let mut group = FiniteGroup { order: n, mult, identity, inverse, generators: Vec::new() };
        group.generators = group.small_generating_set(&group.whole());
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as usize
    }

    /// The conjugate `g h g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// A small generating set of the whole group (empty for the trivial group).
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    pub fn is_commutative(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn check_element(&self, a: Elem) -> Result<Elem, GroupError> {
        if a < self.order {
            Ok(a)
        } else {
            Err(GroupError::ElementOutOfRange(a))
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, vec![self.identity])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, self.elements().collect())
    }

    /// The subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[Elem]) -> Result<Subgroup, GroupError> {
        for &g in gens {
            self.check_element(g)?;
        }
        Ok(Subgroup::from_mask(closure_mask(self, gens)))
    }

    /// Checks that `elements` form a subgroup and wraps them.
    pub fn subgroup_from_elements(&self, elements: &[Elem]) -> Result<Subgroup, GroupError> {
        let mut mask = FixedBitSet::with_capacity(self.order);
        for &e in elements {
            self.check_element(e)?;
            mask.insert(e);
        }
        if !mask.contains(self.identity) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        for a in mask.ones() {
            if !mask.contains(self.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for b in mask.ones() {
                if !mask.contains(self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("product of {a} and {b} missing")));
                }
            }
        }
        Ok(Subgroup::from_mask(mask))
    }

    /// Normality test: `g h g^-1` stays in `h` for every generator `g` of the group.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&g| h.elements().iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// The subgroup `g h g^-1`.
    pub fn conjugate_subgroup(&self, g: Elem, h: &Subgroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order);
        for &x in h.elements() {
            mask.insert(self.conj(g, x));
        }
        Subgroup::from_mask(mask)
    }

    pub fn index(&self, h: &Subgroup) -> usize {
        self.order / h.order()
    }

    /// Greedy generating set: walk the elements in order and keep those not yet generated.
    pub fn small_generating_set(&self, h: &Subgroup) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = FixedBitSet::with_capacity(self.order);
        span.insert(self.identity);
        for &x in h.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = closure_mask(self, &gens);
            }
        }
        gens
    }
}

/// Generators of the table as a magma; used for the associativity test before
/// the table is known to be a group.
fn magma_generators(n: usize, mult: &[u32]) -> Vec<usize> {
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::with_capacity(n);
    let mut gens = Vec::new();
    for cand in 0..n {
        if inside[cand] {
            continue;
        }
        gens.push(cand);
        inside[cand] = true;
        let mut queue = vec![cand];
        while let Some(x) = queue.pop() {
            members.push(x);
            for i in 0..members.len() {
                let y = members[i];
                for p in [mult[x * n + y] as usize, mult[y * n + x] as usize] {
                    if !inside[p] {
                        inside[p] = true;
                        queue.push(p);
                    }
                }
            }
        }
    }
    gens
}

pub(crate) fn closure_mask(g: &FiniteGroup, gens: &[Elem]) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(g.order());
    mask.insert(g.identity());
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !mask.contains(y) {
                mask.insert(y);
                queue.push(y);
            }
        }
    }
    mask
}

/// A subgroup, stored as a sorted element list together with a membership mask.
///
/// Subgroups are ordered by size first and then lexicographically by their
/// element lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<Elem>,
    mask: FixedBitSet,
}

impl Subgroup {
    pub(crate) fn from_mask(mask: FixedBitSet) -> Self {
        Subgroup { elements: mask.ones().collect(), mask }
    }

    pub(crate) fn from_sorted(parent_order: usize, elements: Vec<Elem>) -> Self {
        let mut mask = FixedBitSet::with_capacity(parent_order);
        for &e in &elements {
            mask.insert(e);
        }
        Subgroup { elements, mask }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask.contains(e)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn cyclic_table_is_accepted() {
        let g = FiniteGroup::from_table(&z(6)).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.element_order(2), 3);
        assert!(g.is_commutative());
        assert_eq!(g.generators(), &[1]);
    }

    #[test]
    fn ragged_table_is_rejected() {
        let mut t = z(3);
        t[1].pop();
        assert!(matches!(FiniteGroup::from_table(&t), Err(GroupError::NotAGroup(_))));
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // A loop of order 5 with identity 0 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(&t).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup(ref m) if m.contains("associativity")), "{err}");
    }

    #[test]
    fn missing_identity_is_rejected() {
        let t = vec![vec![1, 0], vec![0, 0]];
        assert!(FiniteGroup::from_table(&t).is_err());
    }

    #[test]
    fn closure_and_index() {
        let g = FiniteGroup::from_table(&z(12)).unwrap();
        let h = g.subgroup_closure(&[8]).unwrap();
        assert_eq!(h.elements(), &[0, 4, 8]);
        assert_eq!(g.index(&h), 4);
        assert!(g.is_normal(&h));
        assert!(g.subgroup_from_elements(&[0, 4]).is_err());
    }
}
