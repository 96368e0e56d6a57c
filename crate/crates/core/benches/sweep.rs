use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pcore::modarith::primes_between;
use pcore::residue_walk::{
    classify_residues, lambda_profile, minimal_pair_direct, minimal_pair_fast,
};
use pcore::sweep::{default_workers, map_ordered, map_sequential};

fn profile_sweep(c: &mut Criterion) {
    let primes = primes_between(20_000, 24_000);
    let workers = default_workers();
    let mut group = c.benchmark_group("profile_sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| map_sequential(black_box(&primes), |&p| lambda_profile(p).unwrap().size))
    });
    group.bench_function(format!("map_ordered_{workers}_workers"), |b| {
        b.iter(|| {
            map_ordered(black_box(&primes), workers, |&p| {
                lambda_profile(p).unwrap().size
            })
        })
    });
    group.finish();
}

fn minimal_pairs(c: &mut Criterion) {
    let p = 10_007;
    let table = classify_residues(p).unwrap();
    let mut group = c.benchmark_group("minimal_pairs_p10007");
    group.sample_size(10);
    group.bench_function("fast", |b| {
        b.iter(|| {
            (1..=p - 2)
                .map(|i| minimal_pair_fast(i, table.entry(i), p).unwrap().sum())
                .sum::<u64>()
        })
    });
    group.bench_function("direct", |b| {
        b.iter(|| {
            (1..=p - 2)
                .map(|i| minimal_pair_direct(i, p).unwrap().sum())
                .sum::<u64>()
        })
    });
    group.finish();
}

criterion_group!(benches, profile_sweep, minimal_pairs);
criterion_main!(benches);
