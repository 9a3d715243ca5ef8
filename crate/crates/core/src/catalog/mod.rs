//! Named instances: finite analogues of standard examples of invariant
//! relations, each packaged with the properties it is expected to have.
//!
//! Every constructor re-checks its expectations and fails with
//! [`CatalogError::ExpectationFailed`] if one does not hold.

pub mod affine;
pub mod icosahedron;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::GAction;
use crate::group::{library, Elem, FiniteGroup, GroupError, Subgroup};
use crate::lattice::AgreeableStructure;
use crate::relations::{
    is_invariant, is_orbital, is_weakly_orbital, maximal_witness_group, maximal_witness_set, orbit_relation,
    point_mask, r_relation, transitive_witness, witnesses, DeciderConfig, Partition, RelationError, WitnessPair,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field of order {0} is not supported (only q = 2 fits in a multiplication table)")]
    UnsupportedField(usize),
    #[error("instance {name}: expected property failed: {property}")]
    ExpectationFailed { name: String, property: String },
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Properties an instance is constructed to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub invariant: bool,
    pub orbital: bool,
    pub weakly_orbital: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_shape: Option<String>,
}

/// An action, a relation on it, and what is known about the pair.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceBundle {
    pub name: String,
    pub description: String,
    pub params: BTreeMap<String, String>,
    pub action: GAction,
    pub relation: Partition,
    pub witness: Option<WitnessPair>,
    pub structure: Option<AgreeableStructure>,
    pub expected: Expected,
}

/// Catalog entry for listings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub fn list() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "cyclic_rotation",
            params: "m=<order> d=<divisor of m>",
            summary: "Z/m acting on itself; classes are the cosets of <d>",
        },
        CatalogEntry {
            name: "icosahedron_antipodism",
            params: "",
            summary: "rotations of the icosahedron on its vertices; antipodal vertices identified",
        },
        CatalogEntry {
            name: "affine_gl3",
            params: "q=2 variant=maximal_pairs|disjoint_union",
            summary: "affine group of F_2^3; two distinct maximal witness pairs, or a relation with no one-point-per-orbit witness",
        },
        CatalogEntry {
            name: "translation_square",
            params: "group=s3|cyclic:<n> subgroup=<comma-separated generators>",
            summary: "G acting on G x G through the first coordinate, witness set the diagonal",
        },
        CatalogEntry {
            name: "s3_chain",
            params: "k=<levels >= 1>",
            summary: "S3 acting on S3 x {0..k}; level 0 behaves differently from the others",
        },
    ]
}

fn param<'a>(params: &'a [(String, String)], key: &str) -> Option<&'a str> {
    params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn number(params: &[(String, String)], key: &str, default: Option<usize>) -> Result<usize, CatalogError> {
    match param(params, key) {
        Some(v) => v
            .parse()
            .map_err(|_| CatalogError::InvalidParameter(format!("{key}={v} is not a number"))),
        None => default.ok_or_else(|| CatalogError::InvalidParameter(format!("missing parameter {key}"))),
    }
}

/// Builds a named instance from `key=value` parameters.
pub fn build(name: &str, params: &[(String, String)]) -> Result<InstanceBundle, CatalogError> {
    match name {
        "cyclic_rotation" => cyclic_rotation(number(params, "m", None)?, number(params, "d", None)?),
        "icosahedron_antipodism" => icosahedron_antipodism(),
        "affine_gl3" => affine_gl3(number(params, "q", Some(2))?, param(params, "variant").unwrap_or("maximal_pairs")),
        "translation_square" => {
            let group = named_group(param(params, "group").unwrap_or("s3"))?;
            let gens: Vec<Elem> = match param(params, "subgroup") {
                None | Some("") => Vec::new(),
                Some(list) => list
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| CatalogError::InvalidParameter(format!("bad generator {s:?}")))
                    })
                    .collect::<Result<_, _>>()?,
            };
            let h = group.subgroup_closure(&gens)?;
            translation_square(&group, &h)
        }
        "s3_chain" => s3_chain(number(params, "k", Some(3))?),
        other => Err(CatalogError::UnknownInstance(other.to_string())),
    }
}

/// `s3`, `cyclic:<n>`, `klein`, `a5`, `s4`, `d<n>`, or `q8`.
pub fn named_group(name: &str) -> Result<FiniteGroup, CatalogError> {
    let bad = || CatalogError::InvalidParameter(format!("unknown group {name:?}"));
    Ok(match name {
        "s3" => library::s3().into_group(),
        "s4" => library::symmetric(4)?.into_group(),
        "a5" => library::alternating(5)?.into_group(),
        "klein" => library::klein_four(),
        "q8" => library::quaternion(),
        _ => {
            if let Some(n) = name.strip_prefix("cyclic:") {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                library::cyclic(n)
            } else if let Some(n) = name.strip_prefix('d') {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n < 3 {
                    return Err(bad());
                }
                library::dihedral(n)?.into_group()
            } else {
                return Err(bad());
            }
        }
    })
}

fn expectation(name: &str, property: impl Into<String>) -> CatalogError {
    CatalogError::ExpectationFailed { name: name.into(), property: property.into() }
}

/// Re-verifies the expectations of a bundle and fills in the maximality
/// flags of its witness.
pub(crate) fn finish(mut b: InstanceBundle) -> Result<InstanceBundle, CatalogError> {
    let (a, e) = (&b.action, &b.relation);
    let invariant = is_invariant(a, e)?;
    if invariant != b.expected.invariant {
        return Err(expectation(&b.name, format!("invariant = {}", b.expected.invariant)));
    }
    if !invariant {
        return Ok(b);
    }
    let orbital = is_orbital(a, e)?.is_some();
    if orbital != b.expected.orbital {
        return Err(expectation(&b.name, format!("orbital = {}", b.expected.orbital)));
    }
    let weak = is_weakly_orbital(a, e, &DeciderConfig::default())?.is_some();
    if weak != b.expected.weakly_orbital {
        return Err(expectation(&b.name, format!("weakly orbital = {}", b.expected.weakly_orbital)));
    }
    if let Some(w) = b.witness.as_mut() {
        let mask = point_mask(a, &w.witness_set)?;
        if !witnesses(a, e, &w.subgroup, &mask) {
            return Err(expectation(&b.name, "the stored witness reproduces the relation"));
        }
        w.set_maximal = maximal_witness_set(a, e, &w.subgroup)? == mask;
        w.subgroup_maximal = maximal_witness_group(a, e, &mask)? == w.subgroup;
    }
    Ok(b)
}

/// Small instances also carry the all-discrete structure.
fn discrete_structure(action: &GAction) -> Option<AgreeableStructure> {
    (action.domain() <= 12).then(|| AgreeableStructure::discrete(action.clone()))
}

/// `Z/m` acting on itself, related when the difference is a multiple of `d`.
pub fn cyclic_rotation(m: usize, d: usize) -> Result<InstanceBundle, CatalogError> {
    if m == 0 || d == 0 || m % d != 0 {
        return Err(CatalogError::InvalidParameter(format!("d = {d} must divide m = {m} > 0")));
    }
    let group = Arc::new(library::cyclic(m));
    let action = GAction::regular(group.clone());
    let h = group.subgroup_closure(&[d % m])?;
    let relation = orbit_relation(&action, &h);
    let full: Vec<usize> = (0..m).collect();
    let witness = WitnessPair { subgroup: h, witness_set: full, subgroup_maximal: true, set_maximal: true };
    finish(InstanceBundle {
        name: "cyclic_rotation".into(),
        description: format!(
            "Z/{m} acting on itself by translation; points are related when they differ by a multiple of {d}. \
             Finite stand-in for a circle with a single rotation."
        ),
        params: [("m".into(), m.to_string()), ("d".into(), d.to_string())].into_iter().collect(),
        structure: discrete_structure(&action),
        action,
        relation,
        witness: Some(witness),
        expected: Expected {
            invariant: true,
            orbital: true,
            weakly_orbital: true,
            witness_shape: Some("(<d>, X)".into()),
        },
    })
}

/// The icosahedral rotation group on the 12 vertices, antipodal vertices related.
pub fn icosahedron_antipodism() -> Result<InstanceBundle, CatalogError> {
    let rotations = icosahedron::rotation_group()?;
    let action = GAction::natural(&rotations);
    let relation = Partition::from_labels(
        &icosahedron::antipode().iter().enumerate().map(|(i, &j)| i.min(j)).collect::<Vec<_>>(),
    );
    let witness = transitive_witness(&action, &relation, 0)?;
    finish(InstanceBundle {
        name: "icosahedron_antipodism".into(),
        description: "Rotation group of the icosahedron (isomorphic to A5) on its 12 vertices; antipodal \
                      vertices are related. Finite stand-in for the antipodal relation of SO(3) on the sphere."
            .into(),
        params: BTreeMap::new(),
        structure: discrete_structure(&action),
        action,
        relation,
        witness: Some(witness),
        expected: Expected {
            invariant: true,
            orbital: false,
            weakly_orbital: true,
            witness_shape: Some("(class stabilizer of a vertex, {vertex})".into()),
        },
    })
}

pub fn affine_gl3(q: usize, variant: &str) -> Result<InstanceBundle, CatalogError> {
    affine::build(q, variant)
}

/// `G` acting on `G x G` by `g.(a, b) = (ga, b)`, with the diagonal as witness set.
/// Pair `(a, b)` has index `a * |G| + b`.
pub fn translation_square(group: &FiniteGroup, h: &Subgroup) -> Result<InstanceBundle, CatalogError> {
    let n = group.order();
    let g = Arc::new(group.clone());
    let mut table = Vec::with_capacity(n);
    for k in 0..n {
        table.push((0..n * n).map(|p| group.mul(k, p / n) * n + p % n).collect::<Vec<_>>());
    }
    let action = GAction::new(g, n * n, &table).map_err(RelationError::from)?;
    let diagonal: Vec<usize> = (0..n).map(|a| a * n + a).collect();
    let relation = r_relation(&action, h, &diagonal)?
        .to_partition()
        .ok_or_else(|| expectation("translation_square", "R is an equivalence relation"))?;
    let witness = WitnessPair { subgroup: h.clone(), witness_set: diagonal, subgroup_maximal: false, set_maximal: false };
    finish(InstanceBundle {
        name: "translation_square".into(),
        description: "G acting on G x G by left translation of the first coordinate; E is generated by a \
                      subgroup H and the diagonal. Orbital exactly when H is normal."
            .into(),
        params: [("subgroup".into(), format!("{:?}", h.elements()))].into_iter().collect(),
        structure: discrete_structure(&action),
        action,
        relation,
        witness: Some(witness),
        expected: Expected {
            invariant: true,
            orbital: group.is_normal(h),
            weakly_orbital: true,
            witness_shape: Some("(H, diagonal)".into()),
        },
    })
}

/// S3 element indices used by [`s3_chain`]: `e, (01), (02), (12), (012), (021)`.
pub const S3_TRANSPOSITION_01: Elem = 1;
pub const S3_CYCLE_012: Elem = 4;

/// `S3` acting on `S3 x {0..k}` through the first coordinate; point `(s, n)`
/// has index `n * 6 + s`. Witness: `H = {e, (01)}` and
/// `X~ = {((012), 0)} u {(e, n) : 1 <= n <= k}`.
pub fn s3_chain(k: usize) -> Result<InstanceBundle, CatalogError> {
    if k == 0 {
        return Err(CatalogError::InvalidParameter("k must be at least 1".into()));
    }
    let s3 = library::s3().into_group();
    let g = Arc::new(s3.clone());
    let levels = k + 1;
    let table: Vec<Vec<usize>> = (0..6)
        .map(|a| (0..6 * levels).map(|p| (p / 6) * 6 + s3.mul(a, p % 6)).collect())
        .collect();
    let action = GAction::new(g, 6 * levels, &table).map_err(RelationError::from)?;
    let h = s3.subgroup_closure(&[S3_TRANSPOSITION_01])?;
    let mut xt = vec![S3_CYCLE_012];
    xt.extend((1..=k).map(|n| n * 6));
    let relation = r_relation(&action, &h, &xt)?
        .to_partition()
        .ok_or_else(|| expectation("s3_chain", "R is an equivalence relation"))?;
    let identity = 0;
    if relation.same_block(identity, S3_TRANSPOSITION_01)
        || (1..=k).any(|n| !relation.same_block(n * 6 + identity, n * 6 + S3_TRANSPOSITION_01))
    {
        return Err(expectation("s3_chain", "level 0 splits e from (01), higher levels join them"));
    }
    let witness = WitnessPair { subgroup: h, witness_set: xt, subgroup_maximal: false, set_maximal: false };
    finish(InstanceBundle {
        name: "s3_chain".into(),
        description: format!(
            "S3 acting on S3 x {{0..{k}}} by left multiplication on the first coordinate, with \
             H = {{e, (01)}} and X~ = {{((012), 0)}} u {{(e, n) : 1 <= n <= {k}}}. Truncation of a sequence \
             of levels converging to level 0."
        ),
        params: [("k".into(), k.to_string())].into_iter().collect(),
        structure: discrete_structure(&action),
        action,
        relation,
        witness: Some(witness),
        expected: Expected {
            invariant: true,
            orbital: false,
            weakly_orbital: true,
            witness_shape: Some("({e, (01)}, X~)".into()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_examples() {
        let b = cyclic_rotation(6, 3).unwrap();
        assert_eq!(b.relation.block_count(), 3);
        assert!(b.relation.blocks().iter().all(|c| c.len() == 2));
        assert_eq!(cyclic_rotation(1, 1).unwrap().relation.block_count(), 1);
        assert_eq!(cyclic_rotation(6, 1).unwrap().relation, Partition::total(6));
        assert!(cyclic_rotation(6, 4).is_err());
    }

    #[test]
    fn translation_square_normality() {
        let s3 = library::s3().into_group();
        let t = s3.subgroup_closure(&[S3_TRANSPOSITION_01]).unwrap();
        assert!(!translation_square(&s3, &t).unwrap().expected.orbital);
        let a3 = s3.subgroup_closure(&[S3_CYCLE_012]).unwrap();
        assert!(translation_square(&s3, &a3).unwrap().expected.orbital);
        let e = translation_square(&s3, &s3.trivial_subgroup()).unwrap();
        assert_eq!(e.relation, Partition::discrete(36));
    }

    #[test]
    fn unknown_names_and_fields() {
        assert!(matches!(build("nope", &[]), Err(CatalogError::UnknownInstance(_))));
        assert_eq!(affine_gl3(3, "maximal_pairs").unwrap_err(), CatalogError::UnsupportedField(3));
        assert!(s3_chain(0).is_err());
    }
}
