use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use syz_curve::{build_curve, CurveSpec};
use syz_linalg::Execution;
use syz_pencil::{find_pencils, SearchOptions};

fn enumeration(c: &mut Criterion) {
    let curve = build_curve(&CurveSpec::random(8, 17, 1)).unwrap();
    let mut group = c.benchmark_group("find_pencils_g8_d5");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| find_pencils(&curve, 5, SearchOptions { exec, deadline: None }))
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
