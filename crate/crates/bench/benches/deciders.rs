use criterion::{criterion_group, criterion_main, Criterion};
use invrel_bench::{affine_maximal_pairs, icosahedron, s4_regular};
use invrel_core::group::enumerate_subgroups;
use invrel_core::relations::{is_orbital, is_weakly_orbital, maximal_pair, r_relation, DeciderConfig};

fn deciders(c: &mut Criterion) {
    let ico = icosahedron();
    let seq = DeciderConfig { parallel: false, ..DeciderConfig::default() };
    c.bench_function("weakly_orbital/icosahedron", |b| {
        b.iter(|| is_weakly_orbital(&ico.action, &ico.relation, &seq).unwrap())
    });
    c.bench_function("orbital/icosahedron", |b| b.iter(|| is_orbital(&ico.action, &ico.relation).unwrap()));

    let (a, e) = s4_regular();
    c.bench_function("weakly_orbital/s4_regular", |b| b.iter(|| is_weakly_orbital(&a, &e, &seq).unwrap()));
    c.bench_function("subgroups/s4", |b| b.iter(|| enumerate_subgroups(a.group(), false).unwrap()));

    let aff = affine_maximal_pairs();
    let w = aff.witness.clone().expect("witness");
    c.bench_function("r_relation/affine", |b| {
        b.iter(|| r_relation(&aff.action, &w.subgroup, &w.witness_set).unwrap())
    });
    c.bench_function("maximal_pair/affine", |b| {
        b.iter(|| maximal_pair(&aff.action, &aff.relation, &w.subgroup, &w.witness_set).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = deciders
}
criterion_main!(benches);
