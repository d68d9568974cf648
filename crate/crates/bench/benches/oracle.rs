use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mtoh_core::oracle::{bfs_optimal_with, enumerate_states, SearchConfig};
use mtoh_core::Variant;

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("bfs_optimal free n=6");
    group.sample_size(10);
    for workers in [1, 4] {
        let config = SearchConfig {
            workers,
            ..SearchConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(workers), &config, |b, cfg| {
            b.iter(|| bfs_optimal_with(black_box(6), &Variant::Free, cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_states n=6");
    group.sample_size(10);
    group.bench_function("colored", |b| {
        b.iter(|| enumerate_states(black_box(6), &Variant::colored_rbb()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_search, bench_enumerate);
criterion_main!(benches);
