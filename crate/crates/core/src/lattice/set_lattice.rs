use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::LatticeError;

/// A finite family of subsets of `0..n` that contains the empty set and the
/// whole set and is closed under finite unions and intersections.
///
/// Such a family is exactly the set of down-sets of a preorder on `0..n`, where
/// the down-set of `p` is the least member containing `p`. Lattices are stored
/// through that preorder, so membership tests and closure never enumerate the
/// members.
#[derive(Clone, Debug)]
pub enum SetLattice {
    /// Every subset.
    Discrete(usize),
    /// Only the empty set and the whole set.
    Trivial(usize),
    Preorder(Preorder),
    Product(ProductLattice),
}

/// A preorder given by its principal down-sets `down[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    down: Vec<FixedBitSet>,
}

/// The lattice on `A x B` generated by rectangles of members, i.e. the
/// down-sets of the componentwise preorder. Pair `(a, b)` has index `a * |B| + b`.
#[derive(Clone, Debug)]
pub struct ProductLattice {
    left: Box<SetLattice>,
    right: Box<SetLattice>,
    left_down: Vec<FixedBitSet>,
    right_down: Vec<FixedBitSet>,
}

impl ProductLattice {
    pub fn left(&self) -> &SetLattice {
        &self.left
    }

    pub fn right(&self) -> &SetLattice {
        &self.right
    }
}

impl PartialEq for SetLattice {
    fn eq(&self, other: &Self) -> bool {
        self.universe() == other.universe() && (0..self.universe()).all(|p| self.down_set(p) == other.down_set(p))
    }
}

impl Eq for SetLattice {}

impl SetLattice {
    pub fn discrete(n: usize) -> Self {
        SetLattice::Discrete(n)
    }

    pub fn trivial(n: usize) -> Self {
        SetLattice::Trivial(n)
    }

    pub fn product(left: SetLattice, right: SetLattice) -> Self {
        let left_down = left.principal_sets();
        let right_down = right.principal_sets();
        SetLattice::Product(ProductLattice { left: Box::new(left), right: Box::new(right), left_down, right_down })
    }

    /// The least lattice containing `generators`.
    pub fn family_closure(n: usize, generators: &[FixedBitSet]) -> Result<Self, LatticeError> {
        let mut full = FixedBitSet::with_capacity(n);
        full.insert_range(..);
        let mut down = vec![full; n];
        for (i, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(LatticeError::NotALattice(format!(
                    "generator {i} is a subset of a {}-point universe, expected {n}",
                    g.len()
                )));
            }
            for p in g.ones() {
                down[p].intersect_with(g);
            }
        }
        Ok(SetLattice::Preorder(Preorder { down }))
    }

    /// Wraps an explicit family after checking that it is a lattice.
    pub fn from_family(n: usize, sets: &[FixedBitSet]) -> Result<Self, LatticeError> {
        let family: HashSet<&FixedBitSet> = sets.iter().collect();
        for s in sets {
            if s.len() != n {
                return Err(LatticeError::NotALattice(format!("a set has universe {}, expected {n}", s.len())));
            }
        }
        let empty = FixedBitSet::with_capacity(n);
        let mut full = empty.clone();
        full.insert_range(..);
        if !family.contains(&empty) {
            return Err(LatticeError::NotALattice("the empty set is missing".into()));
        }
        if !family.contains(&full) {
            return Err(LatticeError::NotALattice("the whole set is missing".into()));
        }
        for a in sets {
            for b in sets {
                let mut u = a.clone();
                u.union_with(b);
                if !family.contains(&u) {
                    return Err(LatticeError::NotALattice(format!("union of {:?} and {:?} is missing", ones(a), ones(b))));
                }
                let mut i = a.clone();
                i.intersect_with(b);
                if !family.contains(&i) {
                    return Err(LatticeError::NotALattice(format!(
                        "intersection of {:?} and {:?} is missing",
                        ones(a),
                        ones(b)
                    )));
                }
            }
        }
        Self::family_closure(n, sets)
    }

    /// The lattice whose principal down-sets are `down`; checks that they come from a preorder.
    pub fn from_down_sets(down: Vec<FixedBitSet>) -> Result<Self, LatticeError> {
        let n = down.len();
        for (p, d) in down.iter().enumerate() {
            if d.len() != n || !d.contains(p) {
                return Err(LatticeError::NotALattice(format!("down-set of {p} is malformed")));
            }
            if let Some(q) = d.ones().find(|&q| !down[q].is_subset(d)) {
                return Err(LatticeError::NotALattice(format!("down-sets of {p} and {q} are not transitive")));
            }
        }
        Ok(SetLattice::Preorder(Preorder { down }))
    }

    pub fn universe(&self) -> usize {
        match self {
            SetLattice::Discrete(n) | SetLattice::Trivial(n) => *n,
            SetLattice::Preorder(p) => p.down.len(),
            SetLattice::Product(p) => p.left_down.len() * p.right_down.len(),
        }
    }

    /// The least member containing `p`.
    pub fn down_set(&self, p: usize) -> FixedBitSet {
        let n = self.universe();
        match self {
            SetLattice::Discrete(_) => {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(p);
                s
            }
            SetLattice::Trivial(_) => {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert_range(..);
                s
            }
            SetLattice::Preorder(pre) => pre.down[p].clone(),
            SetLattice::Product(prod) => {
                let nb = prod.right_down.len();
                let mut s = FixedBitSet::with_capacity(n);
                for a in prod.left_down[p / nb].ones() {
                    for b in prod.right_down[p % nb].ones() {
                        s.insert(a * nb + b);
                    }
                }
                s
            }
        }
    }

    pub fn principal_sets(&self) -> Vec<FixedBitSet> {
        (0..self.universe()).map(|p| self.down_set(p)).collect()
    }

    /// Membership, i.e. the set is pseudo-closed.
    pub fn contains(&self, set: &FixedBitSet) -> bool {
        debug_assert_eq!(set.len(), self.universe());
        match self {
            SetLattice::Discrete(_) => true,
            SetLattice::Trivial(n) => set.is_clear() || set.count_ones(..) == *n,
            SetLattice::Preorder(pre) => set.ones().all(|p| pre.down[p].is_subset(set)),
            SetLattice::Product(prod) => {
                // Down-closed in the componentwise order iff closed under moving
                // one coordinate down at a time.
                let nb = prod.right_down.len();
                set.ones().all(|p| {
                    let (a, b) = (p / nb, p % nb);
                    prod.left_down[a].ones().all(|a2| set.contains(a2 * nb + b))
                        && prod.right_down[b].ones().all(|b2| set.contains(a * nb + b2))
                })
            }
        }
    }

    pub fn contains_points(&self, points: &[usize]) -> Result<bool, LatticeError> {
        let n = self.universe();
        let mut set = FixedBitSet::with_capacity(n);
        for &p in points {
            if p >= n {
                return Err(LatticeError::PointOutOfRange(p));
            }
            set.insert(p);
        }
        Ok(self.contains(&set))
    }

    /// The largest member contained in `set`.
    pub fn largest_member_within(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut s = set.clone();
        loop {
            let bad: Vec<usize> = s.ones().filter(|&p| !self.down_set(p).is_subset(&s)).collect();
            if bad.is_empty() {
                return s;
            }
            for p in bad {
                s.set(p, false);
            }
        }
    }

    /// All members, sorted by size and then lexicographically. Fails once more
    /// than `budget` members have been generated.
    pub fn members(&self, budget: usize) -> Result<Vec<FixedBitSet>, LatticeError> {
        let n = self.universe();
        let principal = self.principal_sets();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let empty = FixedBitSet::with_capacity(n);
        seen.insert(empty.clone());
        let mut queue = vec![empty];
        while let Some(m) = queue.pop() {
            for p in 0..n {
                if m.contains(p) {
                    continue;
                }
                let mut next = m.clone();
                next.union_with(&principal[p]);
                if seen.insert(next.clone()) {
                    if seen.len() > budget {
                        return Err(LatticeError::ClosureBudgetExceeded { budget });
                    }
                    queue.push(next);
                }
            }
        }
        let mut out: Vec<FixedBitSet> = seen.into_iter().collect();
        out.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.ones().cmp(b.ones())));
        Ok(out)
    }

    pub fn is_discrete(&self) -> bool {
        match self {
            SetLattice::Discrete(_) => true,
            _ => (0..self.universe()).all(|p| self.down_set(p).count_ones(..) == 1),
        }
    }
}

fn ones(s: &FixedBitSet) -> Vec<usize> {
    s.ones().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, pts: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        for &p in pts {
            s.insert(p);
        }
        s
    }

    #[test]
    fn singletons_generate_the_power_set() {
        let l = SetLattice::family_closure(3, &[set(3, &[0]), set(3, &[1]), set(3, &[2])]).unwrap();
        assert_eq!(l.members(100).unwrap().len(), 8);
        assert_eq!(l, SetLattice::discrete(3));
    }

    #[test]
    fn chain_closure() {
        let l = SetLattice::family_closure(3, &[set(3, &[0]), set(3, &[0, 1])]).unwrap();
        let members = l.members(100).unwrap();
        assert_eq!(members.len(), 4);
        assert!(l.contains(&set(3, &[0, 1])));
        assert!(!l.contains(&set(3, &[1])));
        assert_eq!(l.largest_member_within(&set(3, &[1, 2, 0])), set(3, &[0, 1, 2]));
        assert_eq!(l.largest_member_within(&set(3, &[1, 2])), set(3, &[]));
    }

    #[test]
    fn explicit_family_validation() {
        let ok = [set(2, &[]), set(2, &[0]), set(2, &[0, 1])];
        assert!(SetLattice::from_family(2, &ok).is_ok());
        let no_union = [set(3, &[]), set(3, &[0]), set(3, &[1]), set(3, &[0, 1, 2])];
        assert!(SetLattice::from_family(3, &no_union).is_err());
        assert!(SetLattice::from_family(2, &[set(2, &[0, 1])]).is_err());
    }

    #[test]
    fn products() {
        let d = SetLattice::product(SetLattice::discrete(2), SetLattice::discrete(3));
        assert_eq!(d, SetLattice::discrete(6));
        let t = SetLattice::product(SetLattice::trivial(2), SetLattice::trivial(2));
        assert_eq!(t.members(10).unwrap().len(), 2);
        let mixed = SetLattice::product(SetLattice::trivial(2), SetLattice::discrete(2));
        // Members are A x B with A in {0, 1} fixed to all of it: 4 members.
        assert_eq!(mixed.members(10).unwrap().len(), 4);
        assert!(mixed.contains(&set(4, &[0, 2])));
        assert!(!mixed.contains(&set(4, &[0])));
    }

    #[test]
    fn budget() {
        let err = SetLattice::discrete(5).members(10).unwrap_err();
        assert_eq!(err, LatticeError::ClosureBudgetExceeded { budget: 10 });
    }
}
