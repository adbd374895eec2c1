use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rankexact_core::series::{andrews_dragonette_batch, main_formula, rademacher_p, MainFormula};
use rankexact_core::PrecisionConfig;

fn rademacher(c: &mut Criterion) {
    let cfg = PrecisionConfig::default();
    c.bench_function("rademacher_p/n=100/c<=25", |b| b.iter(|| rademacher_p(black_box(100), 25, &cfg).unwrap()));
}

fn mock(c: &mut Criterion) {
    let cfg = PrecisionConfig::default();
    let ns: Vec<i64> = (1..=50).collect();
    let mut group = c.benchmark_group("andrews_dragonette_batch");
    group.sample_size(10);
    group.bench_function("n<=50/c<=20000", |b| b.iter(|| andrews_dragonette_batch(&ns, 20_000, &cfg).unwrap()));
    group.finish();
}

fn exact(c: &mut Criterion) {
    let cfg = PrecisionConfig::default();
    let mut group = c.benchmark_group("main_formula");
    group.sample_size(10);
    group.bench_function("p=7/n=10/c<=490/a<=70", |b| b.iter(|| main_formula(1, 7, black_box(10), 490, 70, &cfg).unwrap()));
    let formula = MainFormula::new(37, 37 * 20, 40).unwrap();
    group.bench_function("p=37/n=5/prebuilt", |b| b.iter(|| formula.evaluate(3, black_box(5), &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, rademacher, mock, exact);
criterion_main!(benches);
