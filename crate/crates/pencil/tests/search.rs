use proptest::prelude::*;
use syz_curve::{build_canonical, build_curve, CurveSpec, NodalRationalCurve};
use syz_linalg::{poly, Field, PrimeField};
use syz_pencil::*;

fn curve(g: usize, p: u32, seed: u64) -> NodalRationalCurve {
    build_canonical(&CurveSpec::random(g, p, seed), 3, 20).unwrap().0
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn catalan_numbers() {
    assert_eq!((1..=5).map(catalan).collect::<Vec<_>>(), vec![1, 2, 5, 14, 42]);
}

#[test]
fn genus_six_counts_agree_with_the_closure() {
    let mut checked = 0;
    for seed in 0..12 {
        let c = curve(6, 13, seed);
        let s = find_pencils(&c, 4, opts());
        assert!(s.complete);
        assert!(s.pencils.len() <= catalan(3));
        for r in &s.pencils {
            verify(&c, &r.pencil()).unwrap();
        }
        let Ok(cl) = closure_count(&c, 4, seed) else { continue };
        assert_eq!(cl.hilbert, vec![1, 4, 5, 5]);
        assert_eq!(cl.count, catalan(3));
        let rational: Vec<Pencil> = s.pencils.iter().map(PencilRecord::pencil).collect();
        assert_eq!(cl.rational_pencils(), rational, "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 6);
}

#[test]
fn genus_eight_closure_has_fourteen_points() {
    let c = curve(8, 17, 1);
    let cl = closure_count(&c, 5, 1).unwrap();
    assert_eq!(cl.linear_span_dim, 7);
    assert_eq!(cl.hilbert, vec![1, 7, 13, 14, 14]);
    assert_eq!(cl.count, 14);
    assert_eq!(cl.orbits.iter().map(|o| o.size).sum::<usize>(), 14);
    for o in &cl.orbits {
        o.pencil.check(&o.field, &embedded_pairs(&o.field, &c)).unwrap();
    }
    assert_eq!(
        gonality(&c, 5, opts(), 1),
        Gonality {
            value: Some(5),
            lower_bound: 5,
            rational: false
        }
    );
}

#[test]
fn general_curves_have_gonality_k_plus_one() {
    let c = curve(6, 13, 2);
    assert_eq!(
        gonality(&c, 4, opts(), 2),
        Gonality {
            value: Some(4),
            lower_bound: 4,
            rational: true
        }
    );
    assert!(find_pencils(&c, 3, opts()).pencils.is_empty());
}

#[test]
fn seeding_pencil_is_found() {
    let c = build_curve(&CurveSpec::from_pencil(6, 31, 5)).unwrap();
    let (u, v) = c.seed_map().unwrap().clone();
    let f = c.field();
    let seedp = Pencil::from_span(f, &u, &v, 4).unwrap();
    let s = find_pencils(&c, 4, opts());
    assert!(s.pencils.iter().any(|r| r.pencil() == seedp));
}

#[test]
fn trigonal_curve_is_detected() {
    // node pairs in fibers of a degree-3 map make a non-general genus-8 curve
    let f = PrimeField::new(61).unwrap();
    let u = vec![3u32, 0, 5, 1];
    let v = vec![1u32, 7];
    let mut pairs = Vec::new();
    let mut used = std::collections::HashSet::new();
    for c in 0..61u32 {
        let fiber = poly::sub(&f, &u, &poly::scale(&f, &v, &c));
        let r: Vec<u32> = poly::roots(&f, &fiber)
            .into_iter()
            .filter(|x| !used.contains(x))
            .collect();
        if r.len() >= 2 && pairs.len() < 8 {
            used.insert(r[0]);
            used.insert(r[1]);
            pairs.push((r[0], r[1]));
        }
    }
    assert_eq!(pairs.len(), 8);
    let c = NodalRationalCurve::new(f.clone(), pairs).unwrap();
    let g = gonality(&c, 5, opts(), 0);
    assert_eq!(g.value, Some(3));
    let s = find_pencils(&c, 3, opts());
    assert!(s
        .pencils
        .iter()
        .any(|r| r.pencil() == Pencil::from_span(&f, &u, &v, 3).unwrap()));
}

#[test]
fn member_divisors() {
    let c = curve(6, 13, 2);
    let s = find_pencils(&c, 4, opts());
    let p = s.pencils[0].pencil();
    let f = c.field();
    let du = pencil_divisor(&c, &p, (1, 0)).unwrap();
    assert_eq!(du.infinity, 0);
    let ru = poly::roots(f, &p.u);
    assert!(ru.iter().all(|r| du.roots.contains(r)));
    // v has degree < 4, so (0:1) has a root at ∞
    let dv = pencil_divisor(&c, &p, (0, 1)).unwrap();
    assert_eq!(dv.infinity, 4 - poly::degree(f, &p.v).unwrap());
    for a in 0..13 {
        let d = pencil_divisor(&c, &p, (1, a)).unwrap();
        if d.reduced {
            assert_eq!(d.degree(), 4);
        }
    }
    assert_eq!(pencil_divisor(&c, &p, (0, 0)).unwrap_err(), PencilError::ZeroMember);
}

#[test]
fn sampled_pencils_of_higher_degree_are_valid() {
    let c = curve(8, 17, 1);
    let s = sample_pencils(&c, 7, 10, 200_000, 9, opts());
    assert_eq!(s.pencils.len(), 10);
    for r in &s.pencils {
        verify(&c, &r.pencil()).unwrap();
        assert_eq!(r.degree, 7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn every_reported_pencil_satisfies_the_node_conditions(seed in any::<u64>()) {
        let c = build_curve(&CurveSpec::random(5, 13, seed)).unwrap();
        for d in 2..=4 {
            let s = find_pencils(&c, d, opts());
            for r in &s.pencils {
                prop_assert!(verify(&c, &r.pencil()).is_ok());
                let fld = c.field();
                prop_assert_eq!(fld.one(), *r.u.last().unwrap());
            }
        }
    }
}
