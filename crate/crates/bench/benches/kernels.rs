use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use turan_forge::collections::build_rich_paths;
use turan_forge::counting::{count_c4, hom_path_count};
use turan_forge::oracle::find_subgraph;
use turan_forge_bench::{cycle, dense_host, sparse_host};

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("counting");
    for n in [100, 200] {
        let g = dense_host(n, 1);
        group.bench_with_input(BenchmarkId::new("count_c4", n), &g, |b, g| b.iter(|| count_c4(black_box(g))));
    }
    let g = sparse_host(2000, 2);
    for k in [4, 16, 64] {
        group.bench_with_input(BenchmarkId::new("hom_path_count", k), &k, |b, &k| {
            b.iter(|| hom_path_count(black_box(&g), k))
        });
    }
    group.finish();
}

fn builders(c: &mut Criterion) {
    let mut group = c.benchmark_group("builders");
    group.sample_size(10);
    let g = dense_host(60, 3);
    for k in [3, 4] {
        group.bench_with_input(BenchmarkId::new("rich_paths", k), &k, |b, &k| {
            b.iter(|| build_rich_paths(black_box(&g), k, 4, u64::MAX).expect("within cap"))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let g = sparse_host(60, 4);
    for len in [6, 8] {
        let p = cycle(len);
        group.bench_with_input(BenchmarkId::new("find_cycle", len), &p, |b, p| {
            b.iter(|| find_subgraph(black_box(&g), p, 100_000_000))
        });
    }
    group.finish();
}

criterion_group!(benches, counting, builders, oracle);
criterion_main!(benches);
