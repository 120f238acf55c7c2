use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use latpath::verify::{bijection_suite, sweep, Execution, SweepGrid};

fn executions() -> Vec<(&'static str, Execution)> {
    vec![
        ("sequential", Execution::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Execution::Parallel),
    ]
}

fn bench_sweep(c: &mut Criterion) {
    let grid = SweepGrid::new(3, 6, 8);
    let mut group = c.benchmark_group("formula_sweep");
    group.sample_size(10);
    for (name, exec) in executions() {
        group.bench_function(name, |b| b.iter(|| sweep(black_box(&grid), exec)));
    }
    group.finish();
}

fn bench_bijections(c: &mut Criterion) {
    let mut group = c.benchmark_group("bijection_suite");
    group.sample_size(10);
    for (name, exec) in executions() {
        group.bench_function(name, |b| b.iter(|| bijection_suite(black_box(8), exec)));
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_bijections);
criterion_main!(benches);
