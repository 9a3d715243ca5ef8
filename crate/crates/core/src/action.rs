//! Left actions of finite groups on finite sets.

use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::group::{Elem, FiniteGroup, PermGroup, Subgroup};
use crate::relations::Partition;

/// Index of a point of the acted-on set.
pub type Point = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("the actions are over different groups")]
    GroupMismatch,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("point {0} is out of range")]
    PointOutOfRange(Point),
    #[error("relation is on {found} points but the action has {expected}")]
    DomainMismatch { expected: usize, found: usize },
}

/// Orbit decomposition with a transversal: `transversal[x]` maps the orbit
/// representative of `x` to `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub orbit_of: Vec<usize>,
    pub reps: Vec<Point>,
    pub transversal: Vec<Elem>,
}

impl Orbits {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn members(&self, orbit: usize) -> impl Iterator<Item = Point> + '_ {
        self.orbit_of
            .iter()
            .enumerate()
            .filter(move |(_, &o)| o == orbit)
            .map(|(x, _)| x)
    }
}

/// A left action `G x X -> X` stored as the table `act(g, x)`.
#[derive(Clone)]
pub struct GAction {
    group: Arc<FiniteGroup>,
    domain: usize,
    table: Vec<u32>,
    orbits: OnceLock<Orbits>,
}

impl PartialEq for GAction {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.table == other.table && self.group == other.group
    }
}

impl Eq for GAction {}

impl std::fmt::Debug for GAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GAction")
            .field("group_order", &self.group.order())
            .field("domain", &self.domain)
            .finish()
    }
}

impl GAction {
    /// Validates `table[g][x] = g.x`: entries in range, the identity acts
    /// trivially, and `g.(h.x) = (gh).x` for generators `g`.
    pub fn new(group: Arc<FiniteGroup>, domain: usize, table: &[Vec<usize>]) -> Result<Self, ActionError> {
        if table.len() != group.order() {
            return Err(ActionError::NotAnAction(format!(
                "table has {} rows, the group has order {}",
                table.len(),
                group.order()
            )));
        }
        let mut flat = Vec::with_capacity(group.order() * domain);
        for (g, row) in table.iter().enumerate() {
            if row.len() != domain {
                return Err(ActionError::NotAnAction(format!(
                    "row {g} has {} entries, the domain has {domain} points",
                    row.len()
                )));
            }
            for &y in row {
                if y >= domain {
                    return Err(ActionError::PointOutOfRange(y));
                }
                flat.push(y as u32);
            }
        }
        Self::from_flat(group, domain, flat)
    }

    pub(crate) fn from_flat(group: Arc<FiniteGroup>, domain: usize, table: Vec<u32>) -> Result<Self, ActionError> {
        let action = GAction { group, domain, table, orbits: OnceLock::new() };
        let g = &action.group;
        let e = g.identity();
        if let Some(x) = (0..domain).find(|&x| action.act(e, x) != x) {
            return Err(ActionError::NotAnAction(format!("the identity moves point {x}")));
        }
        for &s in g.generators() {
            for h in g.elements() {
                let sh = g.mul(s, h);
                for x in 0..domain {
                    if action.act(s, action.act(h, x)) != action.act(sh, x) {
                        return Err(ActionError::NotAnAction(format!(
                            "compatibility fails for g={s}, h={h}, x={x}"
                        )));
                    }
                }
            }
        }
        Ok(action)
    }

    /// The action of a group on itself by left multiplication.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for g in 0..n {
            table.extend((0..n).map(|x| group.mul(g, x) as u32));
        }
        GAction { group, domain: n, table, orbits: OnceLock::new() }
    }

    /// The defining action of a permutation group.
    pub fn natural(perms: &PermGroup) -> Self {
        let table = perms.perms().iter().flatten().map(|&x| x as u32).collect();
        GAction {
            group: Arc::new(perms.group().clone()),
            domain: perms.degree(),
            table,
            orbits: OnceLock::new(),
        }
    }

    /// The action on the left cosets `gH`, numbered in order of their least element.
    pub fn on_cosets(group: Arc<FiniteGroup>, h: &Subgroup) -> Self {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut count = 0;
        for g in 0..n {
            if coset_of[g] == usize::MAX {
                for &k in h.elements() {
                    coset_of[group.mul(g, k)] = count;
                }
                count += 1;
            }
        }
        let mut rep = vec![0; count];
        for g in (0..n).rev() {
            rep[coset_of[g]] = g;
        }
        let table = (0..n)
            .flat_map(|g| rep.iter().map(|&r| coset_of[group.mul(g, r)] as u32).collect::<Vec<_>>())
            .collect();
        GAction { group, domain: count, table, orbits: OnceLock::new() }
    }

    /// The trivial action on `domain` points.
    pub fn trivial(group: Arc<FiniteGroup>, domain: usize) -> Self {
        let table = (0..group.order()).flat_map(|_| 0..domain as u32).collect();
        GAction { group, domain, table, orbits: OnceLock::new() }
    }

    /// The disjoint union; points of `other` are shifted by `self.domain()`.
    pub fn disjoint_union(&self, other: &GAction) -> Result<Self, ActionError> {
        if self.group != other.group {
            return Err(ActionError::GroupMismatch);
        }
        let m = self.domain + other.domain;
        let mut table = Vec::with_capacity(self.group.order() * m);
        for g in self.group.elements() {
            table.extend((0..self.domain).map(|x| self.act(g, x) as u32));
            table.extend((0..other.domain).map(|x| (self.domain + other.act(g, x)) as u32));
        }
        Ok(GAction { group: self.group.clone(), domain: m, table, orbits: OnceLock::new() })
    }

    /// The same action transported along the bijection `x -> relabel[x]`.
    pub fn relabeled(&self, relabel: &[Point]) -> Result<Self, ActionError> {
        if relabel.len() != self.domain {
            return Err(ActionError::DomainMismatch { expected: self.domain, found: relabel.len() });
        }
        let mut inverse = vec![usize::MAX; self.domain];
        for (x, &y) in relabel.iter().enumerate() {
            if y >= self.domain || inverse[y] != usize::MAX {
                return Err(ActionError::NotAnAction("relabeling is not a bijection".into()));
            }
            inverse[y] = x;
        }
        let mut table = Vec::with_capacity(self.table.len());
        for g in self.group.elements() {
            table.extend((0..self.domain).map(|y| relabel[self.act(g, inverse[y])] as u32));
        }
        Ok(GAction { group: self.group.clone(), domain: self.domain, table, orbits: OnceLock::new() })
    }

    /// The action of `G` on `X x X`, pair `(a, b)` at index `a * |X| + b`.
    pub fn on_pairs(&self) -> Self {
        let m = self.domain;
        let mut table = Vec::with_capacity(self.group.order() * m * m);
        for g in self.group.elements() {
            for a in 0..m {
                let ga = self.act(g, a) * m;
                table.extend((0..m).map(|b| (ga + self.act(g, b)) as u32));
            }
        }
        GAction { group: self.group.clone(), domain: m * m, table, orbits: OnceLock::new() }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    #[inline]
    pub fn act(&self, g: Elem, x: Point) -> Point {
        self.table[g * self.domain + x] as usize
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.group.order())
            .map(|g| (0..self.domain).map(|x| self.act(g, x)).collect())
            .collect()
    }

    pub fn check_point(&self, x: Point) -> Result<Point, ActionError> {
        if x < self.domain {
            Ok(x)
        } else {
            Err(ActionError::PointOutOfRange(x))
        }
    }

    pub fn orbit_data(&self) -> &Orbits {
        self.orbits.get_or_init(|| {
            let g = &self.group;
            let mut orbit_of = vec![usize::MAX; self.domain];
            let mut transversal = vec![g.identity(); self.domain];
            let mut reps = Vec::new();
            for start in 0..self.domain {
                if orbit_of[start] != usize::MAX {
                    continue;
                }
                let id = reps.len();
                reps.push(start);
                orbit_of[start] = id;
                let mut queue = vec![start];
                while let Some(y) = queue.pop() {
                    for &s in g.generators() {
                        let z = self.act(s, y);
                        if orbit_of[z] == usize::MAX {
                            orbit_of[z] = id;
                            transversal[z] = g.mul(s, transversal[y]);
                            queue.push(z);
                        }
                    }
                }
            }
            Orbits { orbit_of, reps, transversal }
        })
    }

    pub fn orbits(&self) -> Partition {
        Partition::from_labels(&self.orbit_data().orbit_of)
    }

    pub fn orbit_mask(&self, x: Point) -> FixedBitSet {
        let data = self.orbit_data();
        let o = data.orbit_of[x];
        let mut mask = FixedBitSet::with_capacity(self.domain);
        for y in data.members(o) {
            mask.insert(y);
        }
        mask
    }

    pub fn is_transitive(&self) -> bool {
        self.domain > 0 && self.orbit_data().count() == 1
    }

    /// Free: only the identity fixes any point.
    pub fn is_free(&self) -> bool {
        let e = self.group.identity();
        self.group
            .elements()
            .filter(|&g| g != e)
            .all(|g| (0..self.domain).all(|x| self.act(g, x) != x))
    }

    pub fn stabilizer(&self, x: Point) -> Result<Subgroup, ActionError> {
        self.check_point(x)?;
        let elems: Vec<Elem> = self.group.elements().filter(|&g| self.act(g, x) == x).collect();
        Ok(self.group.subgroup_from_elements(&elems).expect("stabilizers are subgroups"))
    }

    /// `{g : x E g.x}`. This is a subgroup whenever `E` is invariant.
    pub fn class_stabilizer(&self, e: &Partition, x: Point) -> Result<Subgroup, ActionError> {
        if e.len() != self.domain {
            return Err(ActionError::DomainMismatch { expected: self.domain, found: e.len() });
        }
        self.check_point(x)?;
        let block = e.block_of(x);
        let elems: Vec<Elem> = self
            .group
            .elements()
            .filter(|&g| e.block_of(self.act(g, x)) == block)
            .collect();
        self.group
            .subgroup_from_elements(&elems)
            .map_err(|err| ActionError::NotASubgroup(err.to_string()))
    }

    /// `G.S` for a set of points `S`.
    pub fn saturate(&self, set: &FixedBitSet) -> FixedBitSet {
        let data = self.orbit_data();
        let mut hit = vec![false; data.count()];
        for x in set.ones() {
            hit[data.orbit_of[x]] = true;
        }
        let mut out = FixedBitSet::with_capacity(self.domain);
        for x in 0..self.domain {
            if hit[data.orbit_of[x]] {
                out.insert(x);
            }
        }
        out
    }
}
