use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    report: Value,
    stderr: String,
}

fn invrel(dir: &Path, args: &[&str], envs: &[(&str, &str)]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_invrel"))
        .current_dir(dir)
        .args(args)
        .envs(envs.iter().copied())
        .output()
        .expect("spawn invrel");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {stdout}"));
    Run { code: out.status.code().unwrap(), report, stderr: String::from_utf8(out.stderr).unwrap() }
}

fn run(dir: &Path, args: &[&str]) -> Run {
    invrel(dir, args, &[])
}

fn write(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn build(dir: &Path, out: &str, args: &[&str]) {
    let mut full = vec!["catalog", "build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out]);
    let r = run(dir, &full);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(dir.join(out).exists());
}

#[test]
fn analyze_icosahedron_bundle() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    build(dir, "ico.json", &["icosahedron_antipodism"]);
    let r = run(dir, &["analyze", "ico.json", "ico.json"]);
    assert_eq!(r.code, 0);
    let res = &r.report["results"];
    assert_eq!(res["invariant"], true);
    assert_eq!(res["orbital"], false);
    assert_eq!(res["weakly_orbital"], true);
    assert_eq!(res["kernel"]["order"], 1);
    assert_eq!(r.report["command"], "analyze");
    assert_eq!(r.report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(r.stderr.contains("orbital: false"));

    // The reported witness is accepted when fed back in.
    write(dir, "w.json", &res["witness"]);
    let back = run(dir, &["witnesses", "ico.json", "ico.json", "--witness", "w.json"]);
    assert_eq!(back.code, 0, "{}", back.stderr);
    let pair = &back.report["results"]["pairs"][0];
    assert_eq!(pair["start"], res["witness"]);
    assert_eq!(pair["set_first"], res["witness"]);
}

#[test]
fn equality_on_a_regular_action_is_orbital() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "z4.json", &json!({"degree": 4, "generators": [[1, 2, 3, 0]]}));
    write(dir, "eq.json", &json!({"blocks": [[0], [1], [2], [3]]}));
    let r = run(dir, &["analyze", "--regular", "z4.json", "eq.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report["results"];
    assert_eq!(res["orbital"], true);
    assert_eq!(res["kernel"]["elements"], json!([0]));
    assert_eq!(res["free"], true);
}

#[test]
fn non_invariant_relation_is_reported_not_rejected() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "z4.json", &json!({"order": 4, "mult": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]}));
    write(dir, "e.json", &json!({"blocks": [[0, 1], [2], [3]]}));
    let r = run(dir, &["analyze", "--regular", "z4.json", "e.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["results"]["invariant"], false);
    assert_eq!(r.report["results"]["issues"][0]["kind"], "not_invariant");
}

#[test]
fn malformed_input_is_an_input_error_with_location() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    build(dir, "c.json", &["cyclic_rotation", "m=4", "d=2"]);
    std::fs::write(dir.join("bad.json"), "{\n  \"blocks\": [[0, 1],\n").unwrap();
    let r = run(dir, &["analyze", "c.json", "bad.json"]);
    assert_eq!(r.code, 2);
    let err = &r.report["results"]["error"];
    assert_eq!(err["kind"], "parse");
    assert_eq!(err["line"], 3);

    let missing = run(dir, &["analyze", "c.json", "nope.json"]);
    assert_eq!(missing.code, 2);
    assert_eq!(missing.report["results"]["error"]["kind"], "io");
}

#[test]
fn verify_discrete_structure_with_orbital_relation() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    build(dir, "c.json", &["cyclic_rotation", "m=6", "d=2"]);
    for theorem in ["orb", "worb"] {
        let r = run(dir, &["verify", "c.json", "c.json", "--theorem", theorem]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let res = &r.report["results"];
        assert_eq!(res["agreeable"], true);
        assert_eq!(res["report"]["agree"], true);
        assert_eq!(res["report"]["conditions"], json!([true, true, true, true]));
    }
}

#[test]
fn verify_trivial_one_point_structure() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    let action = json!({"group": {"order": 1, "mult": [[0]]}, "domain": 1});
    write(dir, "s.json", &json!({"action": action, "lattices": {"G": "trivial", "X": "trivial"}}));
    write(dir, "e.json", &json!({"blocks": [[0]]}));
    let r = run(dir, &["verify", "s.json", "e.json", "--theorem", "orb"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["results"]["report"]["conditions"], json!([true, true, true, true]));
}

#[test]
fn verify_tampered_structure_localizes_the_axiom() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    build(dir, "c.json", &["cyclic_rotation", "m=4", "d=2"]);
    let action = json!({"group": {"degree": 4, "generators": [[1, 2, 3, 0]]}, "domain": 4});
    write(dir, "a.json", &action);
    // Rectangles of closed sets must be closed in X x X.
    write(dir, "s.json", &json!({"action": "a.json", "lattices": {"XxX": "trivial"}}));
    let r = run(dir, &["verify", "s.json", "c.json", "--theorem", "orb"]);
    assert_eq!(r.code, 1);
    let res = &r.report["results"];
    assert_eq!(res["agreeable"], false);
    let failing: Vec<&Value> = res["agreeability"]["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["status"]["status"] == "fail")
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().any(|a| a["axiom"] == 2));
    for a in failing {
        assert_eq!(a["status"]["witness"]["target"], "XxX");
        assert!(!a["status"]["witness"]["required_set"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_reports_an_inapplicable_theorem() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    build(dir, "ico.json", &["icosahedron_antipodism"]);
    let r = run(dir, &["verify", "ico.json", "ico.json", "--theorem", "orb"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["results"]["applicable"], false);
}

#[test]
fn search_budgets() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "zero.json", &json!({"samples": 0}));
    let r = run(dir, &["search", "zero.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["results"]["hit"], Value::Null);
    assert_eq!(r.report["results"]["relations_examined"], 0);

    write(dir, "orb.json", &json!({"samples": 40, "scope": "orbital", "seed": 5}));
    let r = run(dir, &["search", "orb.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["results"]["hit"], Value::Null);
    assert!(r.report["results"]["relations_examined"].as_u64().unwrap() > 0);
    assert_eq!(r.report["seed"], 5);

    let r = run(dir, &["search", "orb.json", "--seed", "9"]);
    assert_eq!(r.report["seed"], 9);
    assert_eq!(r.report["results"]["budget"]["seed"], 9);

    write(dir, "big.json", &json!({"max_group_order": 12}));
    assert_eq!(run(dir, &["search", "big.json"]).code, 2);
}

#[test]
fn results_are_identical_across_runs_and_thread_counts() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    write(dir, "b.json", &json!({"samples": 30, "seed": 17}));
    build(dir, "sq.json", &["translation_square", "group=s3", "subgroup=1"]);
    for args in [vec!["search", "b.json"], vec!["analyze", "sq.json", "sq.json"], vec!["witnesses", "sq.json", "sq.json"]] {
        let a = invrel(dir, &args, &[("RAYON_NUM_THREADS", "1")]);
        let b = invrel(dir, &args, &[("RAYON_NUM_THREADS", "4")]);
        let c = invrel(dir, &args, &[]);
        let text = |r: &Run| serde_json::to_string(&r.report["results"]).unwrap();
        assert_eq!(text(&a), text(&b), "{args:?}");
        assert_eq!(text(&a), text(&c), "{args:?}");
    }
}

#[test]
fn catalog_verbs() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    let r = run(dir, &["catalog", "list"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["results"]["instances"].as_array().unwrap().len(), 5);

    let r = run(dir, &["catalog", "build", "s3_chain", "k=1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["results"]["bundle"]["expected"]["weakly_orbital"], true);

    assert_eq!(run(dir, &["catalog", "build", "nothing"]).code, 2);
    assert_eq!(run(dir, &["catalog", "build", "cyclic_rotation", "m=6", "d=4"]).code, 2);
    assert_eq!(run(dir, &["catalog", "build", "cyclic_rotation", "m6"]).code, 2);
    assert_eq!(run(dir, &["catalog", "build", "affine_gl3", "q=3"]).report["results"]["error"]["kind"], "catalog");
}

#[test]
fn quotient_of_a_discrete_structure_separates() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    build(dir, "c.json", &["cyclic_rotation", "m=6", "d=3"]);
    let r = run(dir, &["quotient", "c.json", "c.json", "--out", "report.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report["results"];
    assert_eq!(res["separated"], true);
    assert_eq!(res["relation_pseudo_closed"], true);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(saved["results"], *res);
}

#[test]
fn witnesses_of_the_affine_relation() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    build(dir, "aff.json", &["affine_gl3", "variant=maximal_pairs"]);
    let r = run(dir, &["witnesses", "aff.json", "aff.json", "--witness", "aff.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let pair = &r.report["results"]["pairs"][0];
    assert_eq!(pair["set_first"]["maximal"], json!([true, true]));
    assert_eq!(pair["group_first"]["maximal"], json!([true, true]));
}
