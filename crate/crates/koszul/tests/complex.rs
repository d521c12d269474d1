use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syz_koszul::*;
use syz_linalg::{binomial, poly, Field, Matrix, PrimeField, Tensor3};

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Sections of O(e) on the line: V = given polynomials of degree ≤ e,
/// M_q = all polynomials of degree ≤ q·e.
fn line_module(f: &PrimeField, e: usize, v: &[Vec<u32>], qmax: usize) -> GradedModule<PrimeField> {
    let dims: Vec<usize> = (0..=qmax).map(|q| q * e + 1).collect();
    let mult = (0..qmax)
        .map(|q| {
            let mut t = Tensor3::zeros(f.clone(), (v.len(), dims[q], dims[q + 1]));
            for (a, va) in v.iter().enumerate() {
                for m in 0..dims[q] {
                    let mut mono = vec![0u32; m + 1];
                    mono[m] = 1;
                    let prod = poly::mul(f, va, &mono);
                    for (n, c) in prod.into_iter().enumerate() {
                        t.set(a, m, n, c);
                    }
                }
            }
            t
        })
        .collect();
    GradedModule::new(f.clone(), v.len(), dims, mult, None).unwrap()
}

fn monomials(e: usize) -> Vec<Vec<u32>> {
    (0..=e)
        .map(|i| {
            let mut m = vec![0u32; i + 1];
            m[i] = 1;
            m
        })
        .collect()
}

#[test]
fn d_squared_vanishes_on_symmetric_algebra() {
    let f = gf(101);
    let s = symmetric_algebra(&f, 4, 3);
    for q in 0..2 {
        for p in 1..=4 {
            let d1 = koszul_differential(&s, p, q).unwrap();
            let d2 = koszul_differential(&s, p - 1, q + 1).unwrap();
            assert!(d2.mul(&d1).unwrap().is_zero(), "d∘d at ({p},{q})");
        }
    }
}

#[test]
fn first_differential_of_sym_is_minus_the_identity_on_v() {
    // d(v ⊗ 1) = (−1)^1 · v under the (−1)^j sign convention
    let f = gf(7);
    let s = symmetric_algebra(&f, 3, 2);
    let d = koszul_differential(&s, 1, 0).unwrap();
    assert_eq!(d, Matrix::from_fn(f.clone(), 3, 3, |i, j| if i == j { 6 } else { 0 }));
}

#[test]
fn differential_out_of_range_is_an_error() {
    let f = gf(7);
    let s = symmetric_algebra(&f, 3, 2);
    assert_eq!(
        koszul_differential(&s, 1, 2),
        Err(KoszulError::DegreeOutOfRange { q: 2 })
    );
}

#[test]
fn symmetric_algebra_is_acyclic() {
    let f = gf(31);
    for n in 1..=4 {
        let s = symmetric_algebra(&f, n, 3);
        for q in 0..3 {
            for p in 0..=n {
                let k = koszul_cohomology(&s, p, q).unwrap();
                let expect = usize::from(p == 0 && q == 0);
                assert_eq!(k.dim(), expect, "n={n} K_{{{p},{q}}}");
            }
        }
    }
}

#[test]
fn cyclic_module_has_one_dimensional_k00() {
    let f = gf(13);
    let m = line_module(&f, 2, &monomials(2), 3);
    assert_eq!(koszul_cohomology(&m, 0, 0).unwrap().dim(), 1);
}

#[test]
fn rational_normal_curve_betti_numbers() {
    // degree-e rational normal curve: b_{p,1} = p·C(e, p+1), b_{p,2} = 0
    let f = gf(101);
    for e in 2..=5 {
        let m = line_module(&f, e, &monomials(e), 3);
        for p in 1..e {
            assert_eq!(
                koszul_cohomology(&m, p, 1).unwrap().dim(),
                p * binomial(e, p + 1),
                "e={e} p={p}"
            );
            assert_eq!(koszul_cohomology(&m, p, 2).unwrap().dim(), 0);
        }
    }
}

#[test]
fn class_coordinates_detect_boundaries() {
    let f = gf(101);
    let m = line_module(&f, 3, &monomials(3), 3);
    let k = koszul_cohomology(&m, 1, 1).unwrap();
    assert_eq!(k.dim(), 3);
    for (i, z) in k.basis_vectors().iter().enumerate() {
        let c = k.class_coords(z).unwrap();
        assert!(c.iter().enumerate().all(|(j, x)| *x == u32::from(i == j)));
    }
    // d of something in ∧^2 V ⊗ M_0 is zero in cohomology
    let mut x = vec![0u32; chain_len(&m, 2, 0)];
    x[1] = 5;
    x[4] = 3;
    let b = apply_differential(&m, 2, 0, &x).unwrap();
    assert!(k.is_boundary(&b).unwrap());
    // a non-cycle is rejected
    let mut y = vec![0u32; k.chain_len];
    y[0] = 1;
    assert_eq!(k.class_coords(&y), Err(KoszulError::NotACycle));
}

#[test]
fn full_submodule_quotient_is_zero() {
    let f = gf(13);
    let m = line_module(&f, 2, &monomials(2), 3);
    let subs: Vec<_> = m.piece_dims().iter().map(|&d| Matrix::identity(f.clone(), d)).collect();
    let qm = m.quotient(&subs).unwrap();
    assert!(qm.piece_dims().iter().all(|&d| d == 0));
}

#[test]
fn non_closed_subspace_is_rejected() {
    let f = gf(13);
    let m = line_module(&f, 2, &monomials(2), 2);
    // constants in degree 0 and 1 but nothing in degree 2
    let subs = vec![
        Matrix::identity(f.clone(), 1),
        Matrix::from_rows(f.clone(), 3, vec![vec![1, 0, 0]]),
        Matrix::zeros(f.clone(), 0, 5),
    ];
    assert_eq!(m.submodule(&subs).unwrap_err(), KoszulError::ClosureViolation { q: 0 });
}

#[test]
fn twist_and_quotient_at_two_points() {
    // Γ(−x−y) ⊂ Γ(O(e)) on the line: polynomials divisible by (t−x)(t−y)
    let f = gf(101);
    let e = 3;
    let m = line_module(&f, e, &monomials(e), 3);
    let vanish = poly::from_roots(&f, &[5, 17]);
    let subs: Vec<_> = (0..=3)
        .map(|q| {
            let rows: Vec<Vec<u32>> = (0..(q * e).saturating_sub(1))
                .map(|i| {
                    let mut r = vec![0u32; q * e + 1];
                    let mut mono = vec![0u32; i + 1];
                    mono[i] = 1;
                    for (j, c) in poly::mul(&f, &vanish, &mono).into_iter().enumerate() {
                        r[j] = c;
                    }
                    r
                })
                .collect();
            Matrix::from_rows(f.clone(), q * e + 1, rows)
        })
        .collect();
    let tw = m.submodule(&subs).unwrap();
    let qt = m.quotient(&subs).unwrap();
    for q in 1..=3 {
        assert_eq!(tw.piece_dim(q), m.piece_dim(q) - 2);
        assert_eq!(qt.piece_dim(q), 2);
    }
}

#[test]
fn restricted_inclusion_is_identity_for_full_w() {
    let f = gf(101);
    let m = line_module(&f, 4, &monomials(4), 3);
    for p in 1..=3 {
        let inc = restricted_inclusion(&m, &Matrix::identity(f.clone(), 5), p, 1).unwrap();
        assert_eq!(inc, Matrix::identity(f.clone(), inc.rows()));
    }
}

#[test]
fn restricted_groups_vanish_for_large_p_and_inject() {
    let f = gf(101);
    let e = 5;
    let m = line_module(&f, e, &monomials(e), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 2..=4 {
        let w = Matrix::from_fn(f.clone(), k, e + 1, |_, _| f.random(&mut rng));
        for p in 1..=3 {
            let g = restricted_cohomology(&m, &w, p, 1).unwrap();
            if p + 1 >= k {
                assert_eq!(g.dim(), 0, "dim W = {k}, p = {p}");
            }
            let inc = restricted_inclusion(&m, &w, p, 1).unwrap();
            assert_eq!(inc.rank(), inc.cols(), "injective for dim W = {k}, p = {p}");
        }
    }
}

fn euler_holds(m: &GradedModule<PrimeField>, s: usize) {
    let mut chains = 0i64;
    let mut homology = 0i64;
    for p in 0..=s.min(m.dim_v()) {
        let sign = if p % 2 == 0 { 1 } else { -1 };
        chains += sign * chain_len(m, p, s - p) as i64;
        homology += sign * koszul_cohomology(m, p, s - p).unwrap().dim() as i64;
    }
    assert_eq!(chains, homology, "strand p+q = {s}");
}

#[test]
fn euler_characteristic_on_strands() {
    let f = gf(101);
    let m = line_module(&f, 3, &monomials(3), 3);
    for s in 0..3 {
        euler_holds(&m, s);
    }
    let sym = symmetric_algebra(&f, 3, 3);
    for s in 0..3 {
        euler_holds(&sym, s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complex_properties_on_random_line_modules(seed in any::<u64>(), e in 2usize..5, n in 2usize..5) {
        let f = gf(31);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<Vec<u32>> = (0..n).map(|_| (0..=e).map(|_| f.random(&mut rng)).collect()).collect();
        let m = line_module(&f, e, &v, 3);
        for q in 0..2 {
            for p in 1..=n {
                let d1 = koszul_differential(&m, p, q).unwrap();
                let d2 = koszul_differential(&m, p - 1, q + 1).unwrap();
                prop_assert!(d2.mul(&d1).unwrap().is_zero());
            }
        }
        for s in 0..3 {
            euler_holds(&m, s);
        }
    }
}
