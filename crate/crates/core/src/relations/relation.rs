use fixedbitset::FixedBitSet;

use super::{Partition, RelationError};

/// A binary relation on `0..n`, stored as one successor bitset per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    size: usize,
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { size: n, rows: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, RelationError> {
        let mut r = Self::empty(n);
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(RelationError::PointOutOfRange(x));
                }
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    pub fn successors(&self, a: usize) -> &FixedBitSet {
        &self.rows[a]
    }

    pub fn set_successors(&mut self, a: usize, row: FixedBitSet) {
        debug_assert_eq!(row.len(), self.size);
        self.rows[a] = row;
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|a| self.contains(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|a| self.rows[a].ones().all(|b| self.contains(b, a)))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.size).all(|a| self.rows[a].ones().all(|b| self.rows[b].is_subset(&self.rows[a])))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// The partition into classes, if this is an equivalence relation.
    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_equivalence() {
            return None;
        }
        let labels: Vec<usize> = (0..self.size)
            .map(|a| self.rows[a].minimum().expect("reflexive rows are nonempty"))
            .collect();
        Some(Partition::from_labels(&labels))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.size == other.size && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// The relation as a subset of `X x X`, pair `(a, b)` at index `a * n + b`.
    pub fn pair_set(&self) -> FixedBitSet {
        let n = self.size;
        let mut set = FixedBitSet::with_capacity(n * n);
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.ones() {
                set.insert(a * n + b);
            }
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equivalence_round_trip() {
        let p = Partition::from_labels(&[0, 1, 0, 2]);
        let r = p.to_relation();
        assert!(r.is_equivalence());
        assert_eq!(r.pair_count(), 6);
        assert_eq!(r.to_partition(), Some(p));
    }

    #[test]
    fn non_equivalences() {
        let r = Relation::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1)]).unwrap();
        assert!(!r.is_symmetric());
        assert!(r.to_partition().is_none());
        let r = Relation::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        assert!(r.is_symmetric() && !r.is_transitive());
        assert!(Relation::from_pairs(2, &[(0, 2)]).is_err());
    }
}
