use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tempoflow_bench::switching_instance;
use tempoflow_core::{
    build_cten, build_ten, critical_times, max_flow, max_flow_over_time, DEFAULT_NODE_BUDGET,
};

/// The condensed pipeline across growing horizons. The instance keeps the
/// same number of capacity changes, so the cost should stay nearly flat
/// while the full expansion grows linearly in the horizon.
fn bench_condensed_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("condensed_pipeline");
    for horizon in [100u64, 1_000, 10_000] {
        let net = switching_instance(horizon, 8);
        group.bench_with_input(BenchmarkId::from_parameter(horizon), &horizon, |b, &h| {
            b.iter(|| max_flow_over_time(black_box(&net), h).unwrap());
        });
    }
    group.finish();
}

/// The full expansion on the same instances, for contrast. Budget-bound, so
/// only the smaller horizons appear.
fn bench_full_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_expansion");
    for horizon in [100u64, 1_000] {
        let net = switching_instance(horizon, 8);
        group.bench_with_input(BenchmarkId::from_parameter(horizon), &horizon, |b, &h| {
            b.iter(|| {
                let ten = build_ten(black_box(&net), h, DEFAULT_NODE_BUDGET).unwrap();
                max_flow(&ten).unwrap().0
            });
        });
    }
    group.finish();
}

/// Construction alone: critical times plus condensed expansion, no solve.
fn bench_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("cten_construction");
    for horizon in [1_000u64, 10_000] {
        let net = switching_instance(horizon, 8);
        group.bench_with_input(BenchmarkId::from_parameter(horizon), &horizon, |b, &h| {
            b.iter(|| {
                let boundaries = critical_times(black_box(&net), h);
                build_cten(&net, &boundaries, h).unwrap()
            });
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_condensed_pipeline,
    bench_full_expansion,
    bench_construction
);
criterion_main!(benches);
