//! JSON file formats for groups, actions, relations, witnesses, lattices,
//! structures, search budgets and catalog bundles.
//!
//! All points and group elements are 0-based indices. A group or action
//! entry may be given inline or as a path to another file, resolved relative
//! to the directory of the file that mentions it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::action::{ActionError, GAction};
use crate::catalog::{Expected, InstanceBundle};
use crate::group::{FiniteGroup, GroupError, PermGroup};
use crate::lattice::search::{RelationScope, SearchBudget};
use crate::lattice::{AgreeableStructure, LatticeError, SetLattice, Slot};
use crate::relations::{
    maximal_witness_group, maximal_witness_set, point_mask, witnesses, Partition, Relation, RelationError, WitnessPair,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

/// `{"order": n, "mult": [[...]]}` or `{"degree": m, "generators": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupFile {
    Table { order: usize, mult: Vec<Vec<usize>> },
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile::Table { order: g.order(), mult: g.table() }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, FormatError> {
        match self {
            GroupFile::Table { order, mult } => {
                if mult.len() != *order {
                    return Err(invalid(format!("\"order\" is {order} but \"mult\" has {} rows", mult.len())));
                }
                Ok(FiniteGroup::from_table(mult)?)
            }
            GroupFile::Permutations { degree, generators } => {
                Ok(PermGroup::from_generators(*degree, generators)?.into_group())
            }
        }
    }
}

/// Either an inline value or a path to a file holding it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Inline<T> {
    Path(String),
    Value(T),
}

/// `{"group": <group or path>, "domain": m, "act": [[...]]}`; without `act`
/// the action is the regular one and `domain` must equal the group order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub group: Inline<GroupFile>,
    pub domain: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub act: Option<Vec<Vec<usize>>>,
}

impl ActionFile {
    pub fn from_action(a: &GAction) -> Self {
        ActionFile {
            group: Inline::Value(GroupFile::from_group(a.group())),
            domain: a.domain(),
            act: Some(a.table()),
        }
    }

    pub fn to_action(&self, base: &Path) -> Result<GAction, FormatError> {
        let group = match &self.group {
            Inline::Value(g) => g.to_group()?,
            Inline::Path(p) => read_group(&base.join(p))?,
        };
        let group = Arc::new(group);
        match &self.act {
            Some(table) => Ok(GAction::new(group, self.domain, table)?),
            None if self.domain == group.order() => Ok(GAction::regular(group)),
            None => Err(invalid(format!(
                "no \"act\" table, and domain {} differs from the group order {}",
                self.domain,
                group.order()
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionFile {
    pub fn from_partition(e: &Partition) -> Self {
        PartitionFile { blocks: e.blocks().to_vec() }
    }

    pub fn to_partition(&self, n: usize) -> Result<Partition, FormatError> {
        Ok(Partition::from_blocks(n, &self.blocks)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub pairs: Vec<[usize; 2]>,
}

impl RelationFile {
    pub fn from_relation(r: &Relation) -> Self {
        RelationFile { pairs: r.pairs().into_iter().map(|(a, b)| [a, b]).collect() }
    }

    pub fn to_relation(&self, n: usize) -> Result<Relation, FormatError> {
        let pairs: Vec<(usize, usize)> = self.pairs.iter().map(|p| (p[0], p[1])).collect();
        Ok(Relation::from_pairs(n, &pairs)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub subgroup: Vec<usize>,
    pub witness_set: Vec<usize>,
    #[serde(default)]
    pub maximal: [bool; 2],
}

impl WitnessFile {
    pub fn from_witness(w: &WitnessPair) -> Self {
        WitnessFile {
            subgroup: w.subgroup.elements().to_vec(),
            witness_set: w.witness_set.clone(),
            maximal: [w.subgroup_maximal, w.set_maximal],
        }
    }

    /// Rebuilds the pair, checking that it witnesses `e` and recomputing the
    /// maximality flags.
    pub fn to_witness(&self, action: &GAction, e: &Partition) -> Result<WitnessPair, FormatError> {
        let h = action.group().subgroup_from_elements(&self.subgroup)?;
        let mask = point_mask(action, &self.witness_set)?;
        if !witnesses(action, e, &h, &mask) {
            return Err(RelationError::WitnessMismatch.into());
        }
        let set_maximal = maximal_witness_set(action, e, &h)? == mask;
        let subgroup_maximal = maximal_witness_group(action, e, &mask)? == h;
        Ok(WitnessPair { subgroup: h, witness_set: mask.ones().collect(), subgroup_maximal, set_maximal })
    }
}

/// A keyword (`discrete`, `trivial`, `product`, `minimal`), an explicit
/// family `{"universe", "sets"}`, or generators closed under unions and
/// intersections `{"universe", "generators", "close": true}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeFile {
    Keyword(String),
    Sets { universe: usize, sets: Vec<Vec<usize>> },
    Generators { universe: usize, generators: Vec<Vec<usize>>, close: bool },
}

fn bitset(n: usize, points: &[usize]) -> Result<FixedBitSet, FormatError> {
    let mut s = FixedBitSet::with_capacity(n);
    for &p in points {
        if p >= n {
            return Err(LatticeError::PointOutOfRange(p).into());
        }
        s.insert(p);
    }
    Ok(s)
}

impl LatticeFile {
    /// A standalone lattice; `product` and `minimal` need a structure.
    pub fn to_lattice(&self) -> Result<SetLattice, FormatError> {
        match self {
            LatticeFile::Keyword(k) => Err(invalid(format!("lattice keyword {k:?} needs an enclosing structure"))),
            LatticeFile::Sets { universe, sets } => {
                let sets: Vec<FixedBitSet> = sets.iter().map(|s| bitset(*universe, s)).collect::<Result<_, _>>()?;
                Ok(SetLattice::from_family(*universe, &sets)?)
            }
            LatticeFile::Generators { universe, generators, close } => {
                if !close {
                    return Err(invalid("\"generators\" requires \"close\": true"));
                }
                let gens: Vec<FixedBitSet> =
                    generators.iter().map(|s| bitset(*universe, s)).collect::<Result<_, _>>()?;
                Ok(SetLattice::family_closure(*universe, &gens)?)
            }
        }
    }

    /// The compact description of `lattice` in `slot` of a structure whose
    /// other lattices are `lattices`.
    pub fn describe(lattice: &SetLattice, slot: Slot, lattices: &[SetLattice; 6]) -> Self {
        match lattice {
            SetLattice::Discrete(_) => return LatticeFile::Keyword("discrete".into()),
            SetLattice::Trivial(_) => return LatticeFile::Keyword("trivial".into()),
            _ => {}
        }
        if let Some((a, b)) = slot.factors() {
            if *lattice == SetLattice::product(lattices[a.index()].clone(), lattices[b.index()].clone()) {
                return LatticeFile::Keyword("product".into());
            }
        }
        LatticeFile::Generators {
            universe: lattice.universe(),
            generators: lattice.principal_sets().iter().map(|s| s.ones().collect()).collect(),
            close: true,
        }
    }
}

/// `{"action": <action or path>, "lattices": {"G": ..., "X": ..., ...}}`.
/// Missing `G` and `X` default to discrete, missing product slots to `product`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub action: Inline<ActionFile>,
    #[serde(default)]
    pub lattices: BTreeMap<String, LatticeFile>,
}

impl StructureFile {
    pub fn from_structure(s: &AgreeableStructure) -> Self {
        StructureFile {
            action: Inline::Value(ActionFile::from_action(s.action())),
            lattices: lattices_to_file(s),
        }
    }

    pub fn to_structure(&self, base: &Path) -> Result<AgreeableStructure, FormatError> {
        let action = match &self.action {
            Inline::Value(a) => a.to_action(base)?,
            Inline::Path(p) => read_action(&base.join(p))?,
        };
        lattices_from_file(action, &self.lattices)
    }
}

fn lattices_to_file(s: &AgreeableStructure) -> BTreeMap<String, LatticeFile> {
    Slot::ALL
        .iter()
        .map(|&slot| (slot.name().to_string(), LatticeFile::describe(s.lattice(slot), slot, s.lattices())))
        .collect()
}

fn lattices_from_file(
    action: GAction,
    entries: &BTreeMap<String, LatticeFile>,
) -> Result<AgreeableStructure, FormatError> {
    if let Some(bad) = entries.keys().find(|k| Slot::parse(k).is_none()) {
        return Err(invalid(format!("unknown lattice slot {bad:?}")));
    }
    let (n, m) = (action.group().order(), action.domain());
    let entry = |slot: Slot| entries.get(slot.name());
    let base = |slot: Slot| -> Result<SetLattice, FormatError> {
        let universe = slot.universe(n, m);
        match entry(slot) {
            None => Ok(SetLattice::discrete(universe)),
            Some(LatticeFile::Keyword(k)) if k == "discrete" => Ok(SetLattice::discrete(universe)),
            Some(LatticeFile::Keyword(k)) if k == "trivial" => Ok(SetLattice::trivial(universe)),
            Some(LatticeFile::Keyword(k)) => Err(invalid(format!("keyword {k:?} is not valid for slot {slot}"))),
            Some(other) => other.to_lattice(),
        }
    };
    let (lg, lx) = (base(Slot::G)?, base(Slot::X)?);
    let wants_minimal = entries.values().any(|l| matches!(l, LatticeFile::Keyword(k) if k == "minimal"));
    let minimal = if wants_minimal {
        Some(AgreeableStructure::minimal_completion(action.clone(), lg.clone(), lx.clone())?)
    } else {
        None
    };
    let mut lattices: Vec<SetLattice> = vec![lg, lx];
    for slot in [Slot::GxX, Slot::XxX, Slot::XxG, Slot::X2xX2] {
        let universe = slot.universe(n, m);
        let (a, b) = slot.factors().expect("product slot");
        let lattice = match entry(slot) {
            None => SetLattice::product(lattices[a.index()].clone(), lattices[b.index()].clone()),
            Some(LatticeFile::Keyword(k)) => match k.as_str() {
                "product" => SetLattice::product(lattices[a.index()].clone(), lattices[b.index()].clone()),
                "discrete" => SetLattice::discrete(universe),
                "trivial" => SetLattice::trivial(universe),
                "minimal" => minimal.as_ref().expect("computed above").lattice(slot).clone(),
                other => return Err(invalid(format!("unknown lattice keyword {other:?}"))),
            },
            Some(other) => other.to_lattice()?,
        };
        lattices.push(lattice);
    }
    let lattices: [SetLattice; 6] = lattices.try_into().expect("six lattices");
    Ok(AgreeableStructure::new(action, lattices)?)
}

/// Search budget file; every field is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BudgetFile {
    pub seed: u64,
    pub samples: usize,
    pub max_group_order: usize,
    pub max_domain: usize,
    pub scope: RelationScope,
}

impl Default for BudgetFile {
    fn default() -> Self {
        BudgetFile::from_budget(&SearchBudget::default())
    }
}

impl BudgetFile {
    pub fn from_budget(b: &SearchBudget) -> Self {
        BudgetFile {
            seed: b.seed,
            samples: b.samples,
            max_group_order: b.max_group_order,
            max_domain: b.max_domain,
            scope: b.scope,
        }
    }

    pub fn to_budget(&self) -> Result<SearchBudget, FormatError> {
        if self.max_group_order > 8 {
            return Err(invalid("max_group_order is limited to 8"));
        }
        Ok(SearchBudget {
            seed: self.seed,
            samples: self.samples,
            max_group_order: self.max_group_order,
            max_domain: self.max_domain,
            scope: self.scope,
        })
    }
}

/// A catalog instance with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub name: String,
    pub description: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    pub action: ActionFile,
    pub relation: PartitionFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<BTreeMap<String, LatticeFile>>,
    pub expected: Expected,
}

impl BundleFile {
    pub fn from_bundle(b: &InstanceBundle) -> Self {
        BundleFile {
            name: b.name.clone(),
            description: b.description.clone(),
            params: b.params.clone(),
            action: ActionFile::from_action(&b.action),
            relation: PartitionFile::from_partition(&b.relation),
            witness: b.witness.as_ref().map(WitnessFile::from_witness),
            structure: b.structure.as_ref().map(lattices_to_file),
            expected: b.expected.clone(),
        }
    }

    pub fn to_bundle(&self, base: &Path) -> Result<InstanceBundle, FormatError> {
        let action = self.action.to_action(base)?;
        let relation = self.relation.to_partition(action.domain())?;
        let witness = match &self.witness {
            Some(w) => Some(w.to_witness(&action, &relation)?),
            None => None,
        };
        let structure = match &self.structure {
            Some(l) => Some(lattices_from_file(action.clone(), l)?),
            None => None,
        };
        Ok(InstanceBundle {
            name: self.name.clone(),
            description: self.description.clone(),
            params: self.params.clone(),
            action,
            relation,
            witness,
            structure,
            expected: self.expected.clone(),
        })
    }
}

/// Parses JSON text, reporting the location of syntax and shape errors.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read_value(path: &Path) -> Result<Value, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse(&text, &path.display().to_string())
}

fn shaped<T: for<'de> Deserialize<'de>>(value: Value, path: &Path, what: &str) -> Result<T, FormatError> {
    serde_json::from_value(value)
        .map_err(|e| invalid(format!("{}: not a valid {what} file: {e}", path.display())))
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn is_bundle(v: &Value) -> bool {
    v.get("expected").is_some() && v.get("relation").is_some()
}

pub fn read_group(path: &Path) -> Result<FiniteGroup, FormatError> {
    shaped::<GroupFile>(read_value(path)?, path, "group")?.to_group()
}

/// Reads an action file, or the action of a bundle file.
pub fn read_action(path: &Path) -> Result<GAction, FormatError> {
    let v = read_value(path)?;
    let base = base_dir(path);
    if is_bundle(&v) {
        return shaped::<BundleFile>(v, path, "bundle")?.action.to_action(&base);
    }
    shaped::<ActionFile>(v, path, "action")?.to_action(&base)
}

/// Reads a partition file, a relation file holding an equivalence relation,
/// or the relation of a bundle file, on `n` points.
pub fn read_partition(path: &Path, n: usize) -> Result<Partition, FormatError> {
    let v = read_value(path)?;
    if is_bundle(&v) {
        return shaped::<BundleFile>(v, path, "bundle")?.relation.to_partition(n);
    }
    if v.get("pairs").is_some() {
        let r = shaped::<RelationFile>(v, path, "relation")?.to_relation(n)?;
        return r.to_partition().ok_or_else(|| invalid(format!("{}: the relation is not an equivalence", path.display())));
    }
    shaped::<PartitionFile>(v, path, "partition")?.to_partition(n)
}

/// Reads a structure file, or the structure of a bundle file.
pub fn read_structure(path: &Path) -> Result<AgreeableStructure, FormatError> {
    let v = read_value(path)?;
    let base = base_dir(path);
    if is_bundle(&v) {
        let b = shaped::<BundleFile>(v, path, "bundle")?;
        let lattices =
            b.structure.as_ref().ok_or_else(|| invalid(format!("{}: the bundle has no structure", path.display())))?;
        return lattices_from_file(b.action.to_action(&base)?, lattices);
    }
    shaped::<StructureFile>(v, path, "structure")?.to_structure(&base)
}

pub fn read_witness(path: &Path, action: &GAction, e: &Partition) -> Result<WitnessPair, FormatError> {
    let v = read_value(path)?;
    if is_bundle(&v) {
        let b = shaped::<BundleFile>(v, path, "bundle")?;
        let w = b.witness.ok_or_else(|| invalid(format!("{}: the bundle has no witness", path.display())))?;
        return w.to_witness(action, e);
    }
    shaped::<WitnessFile>(v, path, "witness")?.to_witness(action, e)
}

pub fn read_bundle(path: &Path) -> Result<InstanceBundle, FormatError> {
    shaped::<BundleFile>(read_value(path)?, path, "bundle")?.to_bundle(&base_dir(path))
}

pub fn read_budget(path: &Path) -> Result<SearchBudget, FormatError> {
    shaped::<BudgetFile>(read_value(path)?, path, "budget")?.to_budget()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library;

    #[test]
    fn group_formats_agree() {
        let table = GroupFile::from_group(&library::s3().into_group());
        let text = serde_json::to_string(&table).unwrap();
        let back: GroupFile = parse(&text, "s3").unwrap();
        assert_eq!(back.to_group().unwrap(), library::s3().into_group());
        let perms: GroupFile = parse(r#"{"degree": 3, "generators": [[1,0,2],[1,2,0]]}"#, "p").unwrap();
        assert_eq!(perms.to_group().unwrap().order(), 6);
    }

    #[test]
    fn parse_errors_carry_a_location() {
        let err = parse::<PartitionFile>("{\n  \"blocks\": [[0, 1]\n}", "bad.json").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn lattice_keywords_need_a_structure() {
        assert!(LatticeFile::Keyword("product".into()).to_lattice().is_err());
        let l = LatticeFile::Generators { universe: 3, generators: vec![vec![0], vec![0, 1]], close: true };
        assert_eq!(l.to_lattice().unwrap().principal_sets().len(), 3);
    }
}
