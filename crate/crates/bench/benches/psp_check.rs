use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gasp_bench::ring_chain;
use gasp_core::{
    enumerate_flp_answer_sets, enumerate_psp_answer_sets, fixtures, is_psp_answer_set,
};

fn psp_check_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_psp_answer_set/ring_chain");
    for rules in [50, 100, 200, 400] {
        let (p, m) = ring_chain(rules);
        group.bench_with_input(BenchmarkId::from_parameter(rules), &rules, |b, _| {
            b.iter(|| assert!(is_psp_answer_set(&p, &m).unwrap()))
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let p = fixtures::p1_loop();
    c.bench_function("enumerate_flp/p1_loop", |b| {
        b.iter(|| enumerate_flp_answer_sets(&p).unwrap())
    });
    c.bench_function("enumerate_psp/p1_loop", |b| {
        b.iter(|| enumerate_psp_answer_sets(&p).unwrap())
    });
}

criterion_group!(
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = psp_check_scaling, enumeration
);
criterion_main!(benches);
