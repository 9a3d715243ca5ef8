use std::path::Path;
use std::sync::Arc;

use invrel_core::catalog::{self, CatalogError};
use invrel_core::format::{
    read_action, read_budget, read_group, read_partition, read_structure, read_witness, BudgetFile, BundleFile,
    FormatError, StructureFile, WitnessFile,
};
use invrel_core::group::DEFAULT_SUBGROUP_BOUND;
use invrel_core::lattice::search::{search_counterexample, SearchHit, Target};
use invrel_core::lattice::{
    check_agreeable, cross_section_condition, separation_report, verify_thm_orb, verify_thm_worb, VerifyConfig,
};
use invrel_core::relations::{
    all_weak_witnesses, is_invariant, is_orbital, is_weakly_orbital, kernel_group, maximal_pair,
    maximal_pair_group_first, DeciderConfig,
};
use invrel_core::{AgreeableStructure, GAction, LatticeError, Partition, RelationError, Slot, WitnessPair};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::Digests;
use crate::{GlobalOpts, TheoremArg};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ran,
    Violated,
    InputError,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ran => 0,
            Status::Violated => 1,
            Status::InputError => 2,
        }
    }
}

pub struct Outcome {
    pub results: Value,
    pub status: Status,
    pub seed: Option<u64>,
    pub summary: Vec<String>,
}

impl Outcome {
    fn ran(results: Value, summary: Vec<String>) -> Self {
        Outcome { results, status: Status::Ran, seed: None, summary }
    }

    pub fn from_error(err: CliError) -> Self {
        let mut error = json!({ "kind": error_kind(&err), "message": err.to_string() });
        if let CliError::Format(FormatError::Parse { path, line, column, .. }) = &err {
            error["path"] = json!(path);
            error["line"] = json!(line);
            error["column"] = json!(column);
        }
        Outcome {
            results: json!({ "error": error }),
            status: Status::InputError,
            seed: None,
            summary: vec![format!("error: {err}")],
        }
    }
}

fn error_kind(err: &CliError) -> &'static str {
    match err {
        CliError::Io { .. } => "io",
        CliError::Usage(_) => "usage",
        CliError::Format(FormatError::Parse { .. }) => "parse",
        CliError::Format(_) => "format",
        CliError::Catalog(_) => "catalog",
        CliError::Relation(_) => "relation",
        CliError::Lattice(_) => "lattice",
    }
}

type CmdResult = Result<Outcome, CliError>;

fn decider(opts: &GlobalOpts) -> DeciderConfig {
    DeciderConfig { subgroup_bound: opts.max_subgroups.unwrap_or(DEFAULT_SUBGROUP_BOUND), ..DeciderConfig::default() }
}

fn verify_config(opts: &GlobalOpts) -> VerifyConfig {
    let mut cfg = VerifyConfig::default();
    if let Some(n) = opts.max_subgroups {
        cfg.subgroup_bound = n;
    }
    if let Some(n) = opts.max_lattice {
        cfg.max_lattice_members = n;
    }
    cfg
}

fn touch(d: &mut Digests, path: &Path) -> Result<(), CliError> {
    d.read(path)
        .map(|_| ())
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn load_action(d: &mut Digests, path: &Path, regular: bool) -> Result<GAction, CliError> {
    touch(d, path)?;
    if regular {
        Ok(GAction::regular(Arc::new(read_group(path)?)))
    } else {
        Ok(read_action(path)?)
    }
}

fn load_partition(d: &mut Digests, path: &Path, n: usize) -> Result<Partition, CliError> {
    touch(d, path)?;
    Ok(read_partition(path, n)?)
}

fn load_structure(d: &mut Digests, path: &Path) -> Result<AgreeableStructure, CliError> {
    touch(d, path)?;
    Ok(read_structure(path)?)
}

fn witness_json(w: &WitnessPair) -> Value {
    json!(WitnessFile::from_witness(w))
}

fn not_invariant(mut results: Value) -> Outcome {
    results["invariant"] = json!(false);
    results["issues"] = json!([{ "kind": "not_invariant", "message": RelationError::NotInvariant.to_string() }]);
    Outcome::ran(results, vec!["the relation is not invariant".into()])
}

pub fn analyze(opts: &GlobalOpts, d: &mut Digests, action: &Path, partition: &Path, regular: bool) -> CmdResult {
    let a = load_action(d, action, regular)?;
    let e = load_partition(d, partition, a.domain())?;
    let mut results = json!({
        "group_order": a.group().order(),
        "domain": a.domain(),
        "transitive": a.is_transitive(),
        "free": a.is_free(),
        "orbit_count": a.orbit_data().count(),
        "class_count": e.block_count(),
    });
    if !is_invariant(&a, &e)? {
        results["orbital"] = Value::Null;
        results["weakly_orbital"] = Value::Null;
        return Ok(not_invariant(results));
    }
    let kernel = kernel_group(&a, &e)?;
    let orbital = is_orbital(&a, &e)?.is_some();
    let mut issues = Vec::new();
    let weak = match is_weakly_orbital(&a, &e, &decider(opts)) {
        Ok(w) => w,
        Err(err @ RelationError::ClassCrossesOrbit(_)) => {
            issues.push(json!({ "kind": "class_crosses_orbit", "message": err.to_string() }));
            None
        }
        Err(err) => return Err(err.into()),
    };
    results["invariant"] = json!(true);
    results["kernel"] = json!({ "elements": kernel.elements(), "order": kernel.order() });
    results["orbital"] = json!(orbital);
    results["weakly_orbital"] = json!(weak.is_some());
    results["witness"] = weak.as_ref().map(witness_json).unwrap_or(Value::Null);
    results["issues"] = json!(issues);
    let mut summary = vec![format!(
        "invariant, kernel of order {}, orbital: {orbital}, weakly orbital: {}",
        kernel.order(),
        weak.is_some()
    )];
    if let Some(w) = &weak {
        summary.push(format!(
            "witness: subgroup of order {}, {} witness points",
            w.subgroup.order(),
            w.witness_set.len()
        ));
    }
    Ok(Outcome::ran(results, summary))
}

pub fn verify(opts: &GlobalOpts, d: &mut Digests, structure: &Path, partition: &Path, theorem: TheoremArg) -> CmdResult {
    let s = load_structure(d, structure)?;
    let e = load_partition(d, partition, s.action().domain())?;
    let cfg = verify_config(opts);
    let theorem_name = match theorem {
        TheoremArg::Orb => "orbital",
        TheoremArg::Worb => "weakly_orbital",
    };
    let agreeability = check_agreeable(&s, &cfg.agree);
    let failed = agreeability.failed();
    if !failed.is_empty() {
        let results = json!({
            "theorem": theorem_name,
            "agreeable": false,
            "agreeability": agreeability,
            "applicable": Value::Null,
            "report": Value::Null,
        });
        return Ok(Outcome {
            results,
            status: Status::Violated,
            seed: None,
            summary: vec![format!("the structure is not agreeable: axioms {failed:?} fail")],
        });
    }
    let report = match theorem {
        TheoremArg::Orb => verify_thm_orb(&s, &e, &cfg),
        TheoremArg::Worb => verify_thm_worb(&s, &e, &cfg),
    };
    let mut results = json!({ "theorem": theorem_name, "agreeable": true, "agreeability": agreeability });
    match report {
        Ok(r) => {
            let status = if r.agree { Status::Ran } else { Status::Violated };
            let summary = vec![format!("conditions {:?}, agreement: {}", r.conditions, r.agree)];
            results["applicable"] = json!(true);
            results["report"] = json!(r);
            Ok(Outcome { results, status, seed: None, summary })
        }
        Err(err @ (LatticeError::NotOrbital | LatticeError::NotWeaklyOrbital)) => {
            results["applicable"] = json!(false);
            results["report"] = Value::Null;
            results["issues"] = json!([{ "kind": "hypothesis", "message": err.to_string() }]);
            Ok(Outcome::ran(results, vec![format!("not applicable: {err}")]))
        }
        Err(err) => Err(err.into()),
    }
}

/// Re-derives the target property of a hit from the structure alone.
fn recheck_hit(hit: &SearchHit) -> bool {
    let s = &hit.structure;
    let e = &hit.relation;
    let lx = s.lattice(Slot::X);
    let classes = e.blocks().iter().all(|b| lx.contains(&e.class_mask(b[0])));
    let closed = s.lattice(Slot::XxX).contains(&e.pair_set());
    let agreeable = check_agreeable(s, &Default::default()).no_failures();
    let target = match hit.target {
        Target::ClassesClosedRelationNot => classes && !closed,
        Target::ClosedButNotSeparated => {
            let cfg = DeciderConfig { parallel: false, ..DeciderConfig::default() };
            let weak = matches!(is_weakly_orbital(s.action(), e, &cfg), Ok(Some(_)));
            closed && weak && separation_report(s, e).map(|r| !r.separated).unwrap_or(false)
        }
    };
    agreeable && target
}

pub fn search(opts: &GlobalOpts, d: &mut Digests, budget: &Path) -> CmdResult {
    touch(d, budget)?;
    let mut b = read_budget(budget)?;
    if let Some(seed) = opts.seed {
        b.seed = seed;
    }
    let outcome = search_counterexample(&b);
    let hit = outcome.hit.as_ref().map(|h| {
        json!({
            "sample": h.sample,
            "sample_seed": h.sample_seed,
            "target": h.target,
            "relation": h.relation.blocks(),
            "structure": StructureFile::from_structure(&h.structure),
            "reverified": recheck_hit(h),
        })
    });
    let summary = vec![match &outcome.hit {
        Some(h) => format!("hit in sample {} ({:?})", h.sample, h.target),
        None => format!(
            "no hit in {} samples ({} relations examined)",
            outcome.samples, outcome.relations_examined
        ),
    }];
    let results = json!({
        "budget": BudgetFile::from_budget(&b),
        "samples": outcome.samples,
        "relations_examined": outcome.relations_examined,
        "hit": hit,
    });
    Ok(Outcome { results, status: Status::Ran, seed: Some(b.seed), summary })
}

pub fn catalog_list() -> CmdResult {
    let entries = catalog::list();
    let summary = entries.iter().map(|e| format!("{:24} {}", e.name, e.summary)).collect();
    Ok(Outcome::ran(json!({ "instances": entries }), summary))
}

pub fn catalog_build(opts: &GlobalOpts, name: &str, params: &[String]) -> CmdResult {
    let params: Vec<(String, String)> = params
        .iter()
        .map(|p| match p.split_once('=') {
            Some((k, v)) => Ok((k.to_string(), v.to_string())),
            None => Err(CliError::Usage(format!("parameter {p:?} is not of the form key=value"))),
        })
        .collect::<Result<_, _>>()?;
    let bundle = catalog::build(name, &params)?;
    let file = BundleFile::from_bundle(&bundle);
    let mut results = json!({
        "name": bundle.name,
        "description": bundle.description,
        "params": bundle.params,
        "group_order": bundle.action.group().order(),
        "domain": bundle.action.domain(),
        "expected": bundle.expected,
    });
    let mut summary = vec![format!("{}: {}", bundle.name, bundle.description)];
    match &opts.out {
        Some(path) => {
            let text = serde_json::to_string_pretty(&file).expect("bundles serialize");
            std::fs::write(path, text + "\n")
                .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
            results["written_to"] = json!(path.display().to_string());
            summary.push(format!("written to {}", path.display()));
        }
        None => results["bundle"] = json!(file),
    }
    Ok(Outcome::ran(results, summary))
}

pub fn witnesses(
    opts: &GlobalOpts,
    d: &mut Digests,
    action: &Path,
    partition: &Path,
    regular: bool,
    witness: Option<&Path>,
) -> CmdResult {
    let a = load_action(d, action, regular)?;
    let e = load_partition(d, partition, a.domain())?;
    let mut results = json!({});
    if !is_invariant(&a, &e)? {
        return Ok(not_invariant(results));
    }
    results["invariant"] = json!(true);
    let starts: Vec<WitnessPair> = match witness {
        Some(path) => {
            touch(d, path)?;
            vec![read_witness(path, &a, &e)?]
        }
        None => match all_weak_witnesses(&a, &e, &decider(opts)) {
            Ok((list, mode)) => {
                results["subgroup_search"] = json!(mode);
                list
            }
            Err(RelationError::ClassCrossesOrbit(_)) => Vec::new(),
            Err(err) => return Err(err.into()),
        },
    };
    let mut pairs = Vec::new();
    let mut disagreements = 0;
    for w in &starts {
        let set_first = maximal_pair(&a, &e, &w.subgroup, &w.witness_set)?;
        let group_first = maximal_pair_group_first(&a, &e, &w.subgroup, &w.witness_set)?;
        let same = set_first == group_first;
        if !same {
            disagreements += 1;
        }
        pairs.push(json!({
            "start": witness_json(w),
            "set_first": witness_json(&set_first),
            "group_first": witness_json(&group_first),
            "orders_agree": same,
        }));
    }
    results["weakly_orbital"] = json!(!starts.is_empty());
    results["pairs"] = json!(pairs);
    let mut summary = vec![format!("{} starting pair(s)", starts.len())];
    if disagreements > 0 {
        summary.push(format!("the two enlargement orders differ on {disagreements} of them"));
    }
    Ok(Outcome::ran(results, summary))
}

pub fn quotient(_opts: &GlobalOpts, d: &mut Digests, structure: &Path, partition: &Path) -> CmdResult {
    let s = load_structure(d, structure)?;
    let e = load_partition(d, partition, s.action().domain())?;
    let mut results = json!({ "cross_section_condition": cross_section_condition(&s) });
    if !is_invariant(s.action(), &e)? {
        return Ok(not_invariant(results));
    }
    let lx = s.lattice(Slot::X);
    let sep = separation_report(&s, &e)?;
    let agreeable = check_agreeable(&s, &Default::default()).no_failures();
    results["invariant"] = json!(true);
    results["agreeable"] = json!(agreeable);
    results["relation_pseudo_closed"] = json!(s.lattice(Slot::XxX).contains(&e.pair_set()));
    results["classes_pseudo_closed"] = json!(e.blocks().iter().all(|b| lx.contains(&e.class_mask(b[0]))));
    results["separated"] = json!(sep.separated);
    results["failing_pair"] = json!(sep.failing_pair);
    let summary = vec![match sep.failing_pair {
        None => "the classes are separated".to_string(),
        Some((x, y)) => format!("the classes of {x} and {y} cannot be separated"),
    }];
    Ok(Outcome::ran(results, summary))
}
