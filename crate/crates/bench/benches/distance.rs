// SPDX-License-Identifier: MIT OR Apache-2.0

use chest_bench::{bernoulli_pair, hidden_rotation_sample};
use chest_core::{empirical_distance, DistanceParams};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn binary(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_binary");
    group.sample_size(10);
    for n in [1_000, 10_000, 60_000] {
        let (x, y) = bernoulli_pair(n, 1);
        let params = DistanceParams::discrete(2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| empirical_distance(&x, &y, &params).unwrap())
        });
    }
    group.finish();
}

fn real(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_real");
    group.sample_size(10);
    for n in [1_000, 10_000] {
        let z = hidden_rotation_sample(2 * n, 2);
        let (x, y) = z.split_at(n);
        let params = DistanceParams::real();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| empirical_distance(x, y, &params).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, binary, real);
criterion_main!(benches);
