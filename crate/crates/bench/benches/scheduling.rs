use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mls_core::workloads::{generate, Family, GenSpec};
use mls_core::{run_ljllm, run_lpt, run_ls, Flatten, Oracle};

fn online_algorithms(c: &mut Criterion) {
    let mut group = c.benchmark_group("online");
    for &n in &[1_000usize, 10_000, 100_000] {
        let instance = generate(&GenSpec::new(Family::Uniform).m(16).k(8).n(n).ptimes(1, 100).seed(1))
            .expect("valid spec");
        group.bench_with_input(BenchmarkId::new("ljllm", n), &instance, |b, i| {
            b.iter(|| run_ljllm(black_box(i)))
        });
        group.bench_with_input(BenchmarkId::new("ls", n), &instance, |b, i| {
            b.iter(|| run_ls(black_box(i), Flatten::Concatenate))
        });
        group.bench_with_input(BenchmarkId::new("lpt", n), &instance, |b, i| {
            b.iter(|| run_lpt(black_box(i)))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(20);
    for &n in &[8usize, 12, 16] {
        let instance = generate(&GenSpec::new(Family::Uniform).m(3).k(2).n(n).seed(7)).expect("valid spec");
        let oracle = Oracle::default();
        group.bench_with_input(BenchmarkId::new("branch_and_bound", n), &instance, |b, i| {
            b.iter(|| oracle.solve(black_box(i)))
        });
    }
    group.finish();
}

criterion_group!(benches, online_algorithms, oracle);
criterion_main!(benches);
