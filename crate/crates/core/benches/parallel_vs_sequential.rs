use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use oddperfect_core::classify::enumerate_multiperfect;
use oddperfect_core::quad::certificate_sweep;
use oddperfect_core::search::{run_search, Equation, SearchConfig};

fn worker_counts() -> Vec<usize> {
    let n = std::thread::available_parallelism().map_or(1, |n| n.get());
    vec![1, n.max(2)]
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_n_squared_q_200k");
    group.sample_size(10);
    for workers in worker_counts() {
        let cfg = SearchConfig::new(Equation::NSquared, 3, 200_000, 1, 25).workers(workers);
        group.bench_with_input(BenchmarkId::from_parameter(workers), &cfg, |b, cfg| {
            b.iter(|| black_box(run_search(cfg).unwrap().records.len()))
        });
    }
    group.finish();
}

fn sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiperfect_sieve_4m");
    group.sample_size(10);
    for workers in worker_counts() {
        group.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &w| {
            b.iter(|| black_box(enumerate_multiperfect(4_000_000, w).unwrap().len()))
        });
    }
    group.finish();
}

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate_sweep_q_2000");
    group.sample_size(10);
    for workers in worker_counts() {
        group.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &w| {
            b.iter(|| black_box(certificate_sweep(2_000, 61, w).unwrap().len()))
        });
    }
    group.finish();
}

criterion_group!(benches, search, sieve, certificates);
criterion_main!(benches);
