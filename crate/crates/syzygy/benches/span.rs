use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use syz_curve::{build_canonical, CurveSpec};
use syz_linalg::Execution;
use syz_pencil::closure_count;
use syz_syzygy::{gsc_span_test, GscOptions, PencilSource};

fn span(c: &mut Criterion) {
    let (curve, ring, _) = build_canonical(&CurveSpec::random(6, 13, 2), 3, 20).unwrap();
    let srcs: Vec<PencilSource> = closure_count(&curve, 4, 2)
        .unwrap()
        .orbits
        .into_iter()
        .map(PencilSource::Orbit)
        .collect();
    let mut group = c.benchmark_group("gsc_g6_p2");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| {
                gsc_span_test(&curve, &ring, &srcs, 2, GscOptions { exec, members: None })
                    .unwrap()
                    .span_dim
            })
        });
    }
    group.finish();
}

criterion_group!(benches, span);
criterion_main!(benches);
