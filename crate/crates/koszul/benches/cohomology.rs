use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syz_koszul::{koszul_cohomology_with, symmetric_algebra, SymBasis};
use syz_linalg::{Execution, Matrix, PrimeField};

fn cohomology(c: &mut Criterion) {
    // Sym(V)/(I) truncated at degree 2 for a random space of 12 quadrics in 8 variables
    let f = PrimeField::new(10007).unwrap();
    let n = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = symmetric_algebra(&f, n, 2);
    let len2 = SymBasis::new(n, 2).len();
    let rows: Vec<Vec<u32>> = (0..12)
        .map(|_| (0..len2).map(|_| rng.gen_range(0..10007)).collect())
        .collect();
    let quads = Matrix::from_rows(f, len2, rows).rowspace();
    let m = s
        .quotient(&[Matrix::zeros(f, 0, 1), Matrix::zeros(f, 0, n), quads])
        .unwrap();
    let mut group = c.benchmark_group("koszul_k31_k41");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| {
                let a = koszul_cohomology_with(&m, 3, 1, exec).unwrap().dim();
                let b = koszul_cohomology_with(&m, 4, 1, exec).unwrap().dim();
                (a, b)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, cohomology);
criterion_main!(benches);
