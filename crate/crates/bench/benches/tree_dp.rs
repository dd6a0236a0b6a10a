use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use semistrong_bench::{bounded_tree, caterpillar};
use semistrong_core::dp::{semistrong_index_rooted, solve_tree};

fn scaling_in_n(c: &mut Criterion) {
    let mut group = c.benchmark_group("index_by_n");
    group.sample_size(10);
    for n in [10_000, 20_000, 40_000, 80_000] {
        let tree = bounded_tree(n, 6, 7);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &tree, |b, t| {
            b.iter(|| black_box(semistrong_index_rooted(t).unwrap().index))
        });
    }
    group.finish();
}

fn scaling_in_degree(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_pass_by_degree");
    group.sample_size(10);
    for delta in [3, 4, 6, 8, 10] {
        let tree = caterpillar(200, delta);
        let budget = delta as u32 + 1;
        group.bench_with_input(BenchmarkId::from_parameter(delta), &tree, |b, t| {
            b.iter(|| black_box(solve_tree(t, budget).unwrap().feasible()))
        });
    }
    group.finish();
}

criterion_group!(benches, scaling_in_n, scaling_in_degree);
criterion_main!(benches);
