use std::collections::HashMap;
use std::hash::Hash;

use fixedbitset::FixedBitSet;

use super::{Relation, RelationError};

/// A partition of `0..n`, equivalently an equivalence relation.
///
/// Blocks are kept in canonical form: each block is sorted and blocks are
/// ordered by their least point, so two partitions are equal exactly when
/// they describe the same relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Points with equal labels share a block.
    pub fn from_labels<L: Hash + Eq + Clone>(labels: &[L]) -> Self {
        let mut ids: HashMap<L, usize> = HashMap::new();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, l) in labels.iter().enumerate() {
            let next = ids.len();
            let id = *ids.entry(l.clone()).or_insert(next);
            if id == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[id].push(x);
            block_of.push(id);
        }
        Partition { block_of, blocks }
    }

    /// Validates that `blocks` are nonempty, disjoint, and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, RelationError> {
        let mut labels = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(RelationError::InvalidPartition(format!("block {i} is empty")));
            }
            for &x in block {
                if x >= n {
                    return Err(RelationError::PointOutOfRange(x));
                }
                if labels[x] != usize::MAX {
                    return Err(RelationError::InvalidPartition(format!("point {x} lies in two blocks")));
                }
                labels[x] = i;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(RelationError::InvalidPartition(format!("point {x} is in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// The equality relation: every point alone.
    pub fn discrete(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    /// A single block.
    pub fn total(n: usize) -> Self {
        Self::from_labels(&vec![0u8; n])
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    #[inline]
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// The block containing `x`.
    pub fn class(&self, x: usize) -> &[usize] {
        &self.blocks[self.block_of[x]]
    }

    pub fn class_mask(&self, x: usize) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.len());
        for &y in self.class(x) {
            mask.insert(y);
        }
        mask
    }

    /// `self` refines `other`: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.len() == other.len()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&x| other.same_block(x, b[0])))
    }

    pub fn to_relation(&self) -> Relation {
        let mut r = Relation::empty(self.len());
        for block in &self.blocks {
            let mut mask = FixedBitSet::with_capacity(self.len());
            for &x in block {
                mask.insert(x);
            }
            for &x in block {
                r.set_successors(x, mask.clone());
            }
        }
        r
    }

    /// The relation as a subset of `X x X`, pair `(a, b)` at index `a * n + b`.
    pub fn pair_set(&self) -> FixedBitSet {
        let n = self.len();
        let mut set = FixedBitSet::with_capacity(n * n);
        for block in &self.blocks {
            for &a in block {
                for &b in block {
                    set.insert(a * n + b);
                }
            }
        }
        set
    }

    /// Every partition of `0..n`, generated from restricted growth strings.
    pub fn all(n: usize) -> AllPartitions {
        AllPartitions { rgs: vec![0; n], done: false }
    }
}

/// Iterator over all partitions of a finite set (Bell-number many).
pub struct AllPartitions {
    rgs: Vec<usize>,
    done: bool,
}

impl Iterator for AllPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_labels(&self.rgs);
        // Advance: bump the rightmost position that may grow, reset the tail.
        let n = self.rgs.len();
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.rgs[i - 1]);
        }
        match (1..n).rev().find(|&i| self.rgs[i] <= prefix_max[i]) {
            Some(i) => {
                self.rgs[i] += 1;
                for v in &mut self.rgs[i + 1..] {
                    *v = 0;
                }
            }
            None => self.done = true,
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::all(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn canonical_form() {
        let a = Partition::from_blocks(4, &[vec![3, 1], vec![2, 0]]).unwrap();
        let b = Partition::from_labels(&['x', 'y', 'x', 'y']);
        assert_eq!(a, b);
        assert_eq!(a.blocks(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn invalid_blocks() {
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1, 7]]).is_err());
    }

    #[test]
    fn refinement() {
        let fine = Partition::from_labels(&[0, 1, 2, 2]);
        let coarse = Partition::from_labels(&[0, 0, 1, 1]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Partition::discrete(4).refines(&fine));
    }
}
