use invrel_core::catalog::{self, affine};
use invrel_core::relations::{
    is_orbital, kernel_group, maximal_pair, maximal_pair_group_first, point_mask, r_relation, transversal_witness_search,
    witnesses,
};

#[test]
fn affine_maximal_pairs_shape() {
    let inst = affine::maximal_pairs_instance();
    let g = inst.affine.group();
    assert_eq!(g.order(), 1344);
    assert!(inst.relation.blocks().iter().all(|c| c.len() == 4));
    let r2 = r_relation(&inst.action, &inst.h2, &inst.xt2).unwrap().to_partition().unwrap();
    assert_eq!(r2, inst.relation);
    assert!(inst.h2.is_subgroup_of(&inst.h1) && inst.h2 != inst.h1);
    let m1 = point_mask(&inst.action, &inst.xt1).unwrap();
    let m2 = point_mask(&inst.action, &inst.xt2).unwrap();
    assert!(m1.is_subset(&m2) && m1 != m2);
    let p1 = maximal_pair(&inst.action, &inst.relation, &inst.h1, &inst.xt1).unwrap();
    assert_eq!((p1.subgroup.clone(), p1.witness_set.clone()), (inst.h1.clone(), inst.xt1.clone()));
    let p2 = maximal_pair(&inst.action, &inst.relation, &inst.h2, &inst.xt2).unwrap();
    assert_eq!((p2.subgroup.clone(), p2.witness_set.clone()), (inst.h2.clone(), inst.xt2.clone()));
    assert!(p1.is_maximal_pair() && p2.is_maximal_pair());
    assert!(is_orbital(&inst.action, &inst.relation).unwrap().is_none());
    assert!(kernel_group(&inst.action, &inst.relation).unwrap().is_trivial());
}

#[test]
fn affine_pairs_depend_on_enlargement_order() {
    // Starting from (H2, X~1): enlarging the set first lands on (H2, X~2),
    // enlarging the group first lands on (H1, X~1).
    let inst = affine::maximal_pairs_instance();
    let m1 = point_mask(&inst.action, &inst.xt1).unwrap();
    assert!(witnesses(&inst.action, &inst.relation, &inst.h2, &m1));
    let set_first = maximal_pair(&inst.action, &inst.relation, &inst.h2, &inst.xt1).unwrap();
    let group_first = maximal_pair_group_first(&inst.action, &inst.relation, &inst.h2, &inst.xt1).unwrap();
    assert_eq!(set_first.subgroup, inst.h2);
    assert_eq!(set_first.witness_set, inst.xt2);
    assert_eq!(group_first.subgroup, inst.h1);
    assert_eq!(group_first.witness_set, inst.xt1);
}

#[test]
fn affine_disjoint_union_has_no_transversal_witness() {
    let inst = affine::disjoint_union_instance();
    let n = inst.affine.group().order();
    let line_classes = inst.relation.class(n).len();
    assert_eq!(line_classes, 2);
    assert_eq!(inst.relation.class(0).len(), 4);
    let mask = point_mask(&inst.action, &inst.witness_set).unwrap();
    assert!(witnesses(&inst.action, &inst.relation, &inst.subgroup, &mask));
    let identity = inst.affine.group().identity();
    let found = transversal_witness_search(&inst.action, &inst.relation, Some(identity), 1 << 20).unwrap();
    assert!(found.is_none());
}

#[test]
fn every_catalog_entry_builds_with_defaults() {
    let defaults: &[(&str, &[(&str, &str)])] = &[
        ("cyclic_rotation", &[("m", "8"), ("d", "2")]),
        ("icosahedron_antipodism", &[]),
        ("affine_gl3", &[("variant", "maximal_pairs")]),
        ("affine_gl3", &[("variant", "disjoint_union")]),
        ("translation_square", &[("group", "s3"), ("subgroup", "1")]),
        ("s3_chain", &[("k", "3")]),
    ];
    for (name, params) in defaults {
        let params: Vec<(String, String)> = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let b = catalog::build(name, &params).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(b.expected.invariant, "{name}");
        assert!(b.expected.weakly_orbital, "{name}");
    }
    assert_eq!(catalog::list().len(), 5);
}

#[test]
fn icosahedron_expectations() {
    let b = catalog::icosahedron_antipodism().unwrap();
    assert_eq!(b.action.group().order(), 60);
    assert_eq!(b.relation.block_count(), 6);
    let w = b.witness.unwrap();
    assert_eq!(w.witness_set, vec![0]);
    assert!(kernel_group(&b.action, &b.relation).unwrap().is_trivial());
}

#[test]
fn s3_chain_levels() {
    let b = catalog::s3_chain(1).unwrap();
    assert_eq!(b.action.domain(), 12);
    let w = b.witness.unwrap();
    let p = maximal_pair(&b.action, &b.relation, &w.subgroup, &w.witness_set).unwrap();
    assert_eq!(p.subgroup, w.subgroup);
}
