use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rankexact_bench::{dedekind_pairs, gamma0_batch};
use rankexact_core::eta::{classical_a_c_factored, dedekind_sum, eta_multiplier};
use rankexact_core::kloosterman::{s_zero_inf, InfKernel};
use rankexact_core::mup::mu_matrix;
use rankexact_core::partition::rank_table;
use rankexact_core::PrecisionConfig;

fn dedekind(c: &mut Criterion) {
    let pairs = dedekind_pairs(60);
    c.bench_function("dedekind_sum/c<=60", |b| b.iter(|| pairs.iter().for_each(|&(d, k)| drop(black_box(dedekind_sum(d, k).unwrap())))));
}

fn multipliers(c: &mut Criterion) {
    let batch = gamma0_batch(7, 200, 1);
    c.bench_function("eta_multiplier/200", |b| b.iter(|| batch.iter().for_each(|g| drop(black_box(eta_multiplier(g).unwrap())))));
    c.bench_function("mu_matrix/p=7/200", |b| b.iter(|| batch.iter().for_each(|g| drop(black_box(mu_matrix(g, 7).unwrap())))));
}

fn kloosterman(c: &mut Criterion) {
    let cfg = PrecisionConfig::default();
    let mut group = c.benchmark_group("s_inf_inf");
    for modulus in [35, 350, 3500] {
        group.bench_with_input(BenchmarkId::new("build+evaluate", modulus), &modulus, |b, &m| {
            b.iter(|| InfKernel::new(m, 7).unwrap().evaluate(1, 0, black_box(4), &cfg).unwrap())
        });
        let kernel = InfKernel::new(modulus, 7).unwrap();
        group.bench_with_input(BenchmarkId::new("evaluate_f64", modulus), &kernel, |b, k| b.iter(|| k.evaluate_f64(1, 0, black_box(4))));
    }
    group.finish();
    c.bench_function("s_zero_inf/p=37/a=100", |b| b.iter(|| s_zero_inf(1, black_box(3), 100, 37, 1, &cfg).unwrap()));
}

fn salie(c: &mut Criterion) {
    let factors = rankexact_core::arith::factorize(720_720);
    c.bench_function("classical_a_c_factored/720720", |b| b.iter(|| classical_a_c_factored(720_720, black_box(17), &factors)));
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_table");
    group.sample_size(10);
    group.bench_function("n<=300", |b| b.iter(|| rank_table(black_box(300)).unwrap()));
    group.finish();
}

criterion_group!(benches, dedekind, multipliers, kloosterman, salie, ranks);
criterion_main!(benches);
