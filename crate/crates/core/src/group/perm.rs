use std::collections::HashMap;

use super::{FiniteGroup, GroupError, MAX_TABLE_ORDER};

/// A permutation group on `0..degree` together with its multiplication table.
///
/// Element `i` of the table is the permutation `perms()[i]`, and the product
/// `ab` is the composite `x -> a(b(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    group: FiniteGroup,
    degree: usize,
    perms: Vec<Vec<usize>>,
}

impl PermGroup {
    /// The group generated by `gens`. Elements are listed in breadth-first order
    /// from the identity, multiplying by generators on the right.
    pub fn from_generators(degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        for p in gens {
            check_perm(degree, p)?;
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut perms = vec![identity];
        let mut i = 0;
        while i < perms.len() {
            for s in gens {
                let next = compose(&perms[i], s);
                if !index.contains_key(&next) {
                    if perms.len() == MAX_TABLE_ORDER {
                        return Err(GroupError::BoundExceeded {
                            order: MAX_TABLE_ORDER + 1,
                            bound: MAX_TABLE_ORDER,
                        });
                    }
                    index.insert(next.clone(), perms.len());
                    perms.push(next);
                }
            }
            i += 1;
        }
        Self::from_elements(degree, perms)
    }

    /// A group from an explicit, closed list of permutations, kept in the given order.
    pub fn from_elements(degree: usize, perms: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if perms.len() > MAX_TABLE_ORDER {
            return Err(GroupError::BoundExceeded { order: perms.len(), bound: MAX_TABLE_ORDER });
        }
        let mut index: HashMap<&[usize], usize> = HashMap::new();
        for (i, p) in perms.iter().enumerate() {
            check_perm(degree, p)?;
            if index.insert(p.as_slice(), i).is_some() {
                return Err(GroupError::NotAGroup(format!("permutation {i} is listed twice")));
            }
        }
        let n = perms.len();
        let mut mult = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                let c = compose(a, b);
                let k = index
                    .get(c.as_slice())
                    .ok_or_else(|| GroupError::NotAGroup("permutation list is not closed".into()))?;
                mult.push(*k as u32);
            }
        }
        let group = FiniteGroup::from_flat(n, mult)?;
        Ok(PermGroup { group, degree, perms })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }
}

fn check_perm(degree: usize, p: &[usize]) -> Result<(), GroupError> {
    if p.len() != degree {
        return Err(GroupError::InvalidPermutation(format!(
            "length {} does not match degree {degree}",
            p.len()
        )));
    }
    let mut hit = vec![false; degree];
    for &x in p {
        if x >= degree || std::mem::replace(&mut hit[x], true) {
            return Err(GroupError::InvalidPermutation(format!("{p:?} is not a bijection")));
        }
    }
    Ok(())
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}
