use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use takeoff_core::drivers::Preset;
use takeoff_core::scenario::{sweep_with, Execution, ParameterAxis, Scenario, SweepGrid};

fn grid(n: usize) -> SweepGrid {
    let spread = |lo: f64, hi: f64| (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    SweepGrid::new(vec![
        ParameterAxis {
            path: "growth.lambda".into(),
            values: spread(0.5, 1.0),
        },
        ParameterAxis {
            path: "growth.beta".into(),
            values: spread(1.5, 3.5),
        },
    ])
}

fn bench_sweep(c: &mut Criterion) {
    let template = Scenario::from_preset(Preset::ConservativePostParity);
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for n in [4, 8, 16] {
        let g = grid(n);
        for (label, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, n * n), &g, |b, g| {
                b.iter(|| sweep_with(black_box(g), &template, 0.01, execution).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
