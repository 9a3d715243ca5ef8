//! Separation of classes by invariant pseudo-closed sets, and the
//! cross-section hypothesis that guarantees it.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{AgreeableStructure, LatticeError, SetLattice, Slot};
use crate::relations::{is_invariant, Partition, RelationError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub separated: bool,
    /// Two classes (by a representative point) that cannot be separated.
    pub failing_pair: Option<(usize, usize)>,
}

/// The largest `E`-invariant member of `L_X` inside `allowed`.
fn largest_saturated_member_within(lx: &SetLattice, e: &Partition, allowed: &FixedBitSet) -> FixedBitSet {
    let mut s = allowed.clone();
    loop {
        let bad: Vec<usize> = s
            .ones()
            .filter(|&p| !lx.down_set(p).is_subset(&s) || e.class(p).iter().any(|&q| !s.contains(q)))
            .collect();
        if bad.is_empty() {
            return s;
        }
        for p in bad {
            s.set(p, false);
        }
    }
}

/// For every two distinct classes `C1`, `C2`, are there `E`-invariant
/// pseudo-closed `F1`, `F2` with `F1 u F2 = X`, `F1` missing `C1` and `F2`
/// missing `C2`?
///
/// The union of all invariant members missing a class is again one, so it
/// suffices to test the largest such set for each class.
pub fn separation_report(s: &AgreeableStructure, e: &Partition) -> Result<SeparationReport, LatticeError> {
    let action = s.action();
    if !is_invariant(action, e)? {
        return Err(RelationError::NotInvariant.into());
    }
    let lx = s.lattice(Slot::X);
    let m = action.domain();
    let largest: Vec<FixedBitSet> = e
        .blocks()
        .iter()
        .map(|b| {
            let mut allowed = FixedBitSet::with_capacity(m);
            allowed.insert_range(..);
            for &x in b {
                allowed.set(x, false);
            }
            largest_saturated_member_within(lx, e, &allowed)
        })
        .collect();
    for i in 0..largest.len() {
        for j in i + 1..largest.len() {
            let mut u = largest[i].clone();
            u.union_with(&largest[j]);
            if u.count_ones(..) != m {
                return Ok(SeparationReport {
                    separated: false,
                    failing_pair: Some((e.blocks()[i][0], e.blocks()[j][0])),
                });
            }
        }
    }
    Ok(SeparationReport { separated: true, failing_pair: None })
}

pub fn quotient_separated(s: &AgreeableStructure, e: &Partition) -> Result<bool, LatticeError> {
    Ok(separation_report(s, e)?.separated)
}

/// For every point `x`, is there a pseudo-closed `A` meeting the orbit of `x`
/// only in `x` and with `G.A = X`?
pub fn cross_section_condition(s: &AgreeableStructure) -> bool {
    let action = s.action();
    let lx = s.lattice(Slot::X);
    let m = action.domain();
    (0..m).all(|x| {
        let mut allowed = FixedBitSet::with_capacity(m);
        allowed.insert_range(..);
        for y in action.orbit_mask(x).ones() {
            if y != x {
                allowed.set(y, false);
            }
        }
        let a = lx.largest_member_within(&allowed);
        a.contains(x) && action.saturate(&a).count_ones(..) == m
    })
}
