use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand_distr::{Distribution, StandardNormal};
use rtemvdr::rng;
use rtemvdr::stats::{
    ks_statistic, standard_normal_cdf, BinRule, DivergenceReport, EmpiricalDistribution,
    StandardNormal as Reference,
};

fn samples(n: usize) -> EmpiricalDistribution {
    let mut r = rng::stream(11);
    let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut r)).collect();
    EmpiricalDistribution::new(v).unwrap()
}

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("divergence");
    for n in [5_000usize, 100_000] {
        let emp = samples(n);
        group.bench_with_input(BenchmarkId::new("ks", n), &emp, |b, emp| {
            b.iter(|| ks_statistic(black_box(emp), standard_normal_cdf))
        });
        group.bench_with_input(BenchmarkId::new("report", n), &emp, |b, emp| {
            b.iter(|| DivergenceReport::against(black_box(emp), &Reference, BinRule::FreedmanDiaconis))
        });
    }
    group.finish();
}

criterion_group!(benches, distances);
criterion_main!(benches);
