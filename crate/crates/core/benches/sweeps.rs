use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use torsionlab::par::Execution;
use torsionlab::sweeps::{admissible_shapes, dimension_sweep, fusion_sweep, tau_sweep};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn tau(c: &mut Criterion) {
    let mut group = c.benchmark_group("tau_sweep");
    group.sample_size(10);
    // warm the sign cache so both modes measure the same work
    tau_sweep(40, 1, 4, 4, Execution::available()).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(tau_sweep(40, 1, 4, 4, exec).unwrap()))
        });
    }
    group.finish();
}

fn fusion(c: &mut Criterion) {
    let mut group = c.benchmark_group("fusion_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(fusion_sweep(40, 3, exec).unwrap()))
        });
    }
    group.finish();
}

fn dimension(c: &mut Criterion) {
    let shapes: Vec<_> = (2..=4).flat_map(|n| admissible_shapes(n, 3)).collect();
    let mut group = c.benchmark_group("dimension_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(dimension_sweep(&shapes, 10, 5, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, tau, fusion, dimension);
criterion_main!(benches);
