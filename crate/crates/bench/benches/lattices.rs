use criterion::{criterion_group, criterion_main, Criterion};
use invrel_bench::s3_chain;
use invrel_core::lattice::{check_agreeable, separation_report, verify_thm_worb, AgreeConfig, VerifyConfig};
use invrel_core::AgreeableStructure;

fn lattices(c: &mut Criterion) {
    let chain = s3_chain(1);
    let s = chain.structure.clone().unwrap_or_else(|| AgreeableStructure::discrete(chain.action.clone()));
    c.bench_function("agreeable/s3_chain_1", |b| b.iter(|| check_agreeable(&s, &AgreeConfig::default())));
    c.bench_function("separation/s3_chain_1", |b| b.iter(|| separation_report(&s, &chain.relation).unwrap()));
    c.bench_function("verify_worb/s3_chain_1", |b| {
        b.iter(|| verify_thm_worb(&s, &chain.relation, &VerifyConfig::default()).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = lattices
}
criterion_main!(benches);
