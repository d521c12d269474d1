use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syz_curve::{build_canonical, quadrics_cubics, CanonicalRing, CurveSpec, NodalRationalCurve};
use syz_koszul::{koszul_cohomology, restricted_cohomology, KoszulClass};
use syz_linalg::{Field, PrimeField};
use syz_pencil::{closure_count, find_pencils, Pencil, SearchOptions};
use syz_syzygy::*;

fn curve(g: usize, p: u32, seed: u64) -> (NodalRationalCurve, CanonicalRing<PrimeField>) {
    let (c, r, _) = build_canonical(&CurveSpec::random(g, p, seed), 3, 20).unwrap();
    (c, r)
}

fn rational_pencils(c: &NodalRationalCurve, d: usize) -> Vec<Pencil> {
    find_pencils(c, d, SearchOptions::default())
        .pencils
        .iter()
        .map(|r| r.pencil())
        .collect()
}

#[test]
fn genus_six_pencil_classes_have_minimal_rank() {
    let (c, ring) = curve(6, 13, 2);
    let f = c.field();
    let pencils = rational_pencils(&c, 4);
    assert_eq!(pencils.len(), 3);
    let i2 = quadrics_cubics(ring.module()).unwrap().0;
    let mut built = 0;
    for pcl in &pencils {
        let sq = scroll_quadrics_of_pencil(&ring, c.denominator(), pcl).unwrap();
        assert_eq!(sq.rows(), 3);
        assert!(sq.row_vecs().iter().all(|q| i2.rref().contains(q)));
        for b in 0..13u32 {
            let cls = match min_rank_syzygy(&ring, c.denominator(), pcl, (&1, &b)) {
                Ok(x) => x,
                Err(SyzygyError::DegenerateDivisor) => continue,
                Err(e) => panic!("{e}"),
            };
            built += 1;
            assert_eq!(cls.p(), 2);
            assert_eq!(cls.rank.rank, 3);
            assert_eq!(cls.restricted_dim, 1);
            assert_eq!(restricted_cohomology(ring.module(), &cls.w, 2, 1).unwrap().dim(), 1);
            assert!(quadric_support_within(ring.module(), &cls.class, &sq).unwrap());
        }
    }
    assert!(built >= 12);
    let _ = f;
}

fn random_classes_have_rank_at_least(ring: &CanonicalRing<PrimeField>, p: usize, seed: u64) {
    let f = ring.field();
    let group = koszul_cohomology(ring.module(), p, 1).unwrap();
    let basis = group.basis_vectors();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < 100 {
        let coords: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.modulus())).collect();
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        let mut z = vec![0u32; group.chain_len];
        for (b, c) in basis.iter().zip(&coords) {
            f.axpy(&mut z, c, b);
        }
        let cert = syzygy_rank(ring.module(), &KoszulClass::native(p, 1, z)).unwrap();
        assert!(cert.rank >= p + 1, "rank {} at p = {p}", cert.rank);
        done += 1;
    }
}

#[test]
fn random_classes_respect_the_rank_bound() {
    let (_, ring6) = curve(6, 13, 2);
    for p in 1..=2 {
        random_classes_have_rank_at_least(&ring6, p, p as u64);
    }
    let (_, ring8) = curve(8, 17, 1);
    for p in 1..=3 {
        random_classes_have_rank_at_least(&ring8, p, 10 + p as u64);
    }
}

#[test]
fn genus_eight_orbit_classes_over_the_extension() {
    // the orbits of seed 1 are not rational; check δ_s over the extension field directly
    let (c, ring) = curve(8, 17, 1);
    let cl = closure_count(&c, 5, 1).unwrap();
    let o = &cl.orbits[0];
    let ef = &o.field;
    let up = |x: &u32| ef.from_prime(*x);
    let ring_e = ring.change_field(ef, up);
    let den: Vec<_> = c.denominator().iter().map(up).collect();
    let sq = scroll_quadrics_of_pencil(&ring_e, &den, &o.pencil).unwrap();
    assert_eq!(sq.rows(), 6);
    let cls = min_rank_syzygy(&ring_e, &den, &o.pencil, (&ef.one(), &ef.from_prime(3))).unwrap();
    assert_eq!((cls.p(), cls.rank.rank, cls.restricted_dim), (3, 4, 1));
    assert!(quadric_support_within(ring_e.module(), &cls.class, &sq).unwrap());
    let rep = to_quadric_rep(ring_e.module(), &cls.class).unwrap();
    assert!(!rep.is_zero(ef));
}

#[test]
fn genus_six_span_test() {
    let (c, ring) = curve(6, 13, 2);
    let srcs: Vec<PencilSource> = closure_count(&c, 4, 2)
        .unwrap()
        .orbits
        .into_iter()
        .map(PencilSource::Orbit)
        .collect();
    let rep = gsc_span_test(&c, &ring, &srcs, 2, GscOptions::default()).unwrap();
    println!("{}", serde_json::to_string(&rep).unwrap());
    assert!(rep.verdict);
}

#[test]
fn genus_eight_last_strand_span() {
    let (c, ring) = curve(8, 17, 1);
    let t = std::time::Instant::now();
    let srcs: Vec<PencilSource> = closure_count(&c, 5, 1)
        .unwrap()
        .orbits
        .into_iter()
        .map(PencilSource::Orbit)
        .collect();
    let rep = gsc_span_test(&c, &ring, &srcs, 3, GscOptions::default()).unwrap();
    println!("{} {:?}", serde_json::to_string(&rep).unwrap(), t.elapsed());
    assert!(rep.verdict);
    assert!(rep.ranks.iter().all(|&r| r == 4));
}

#[test]
fn genus_eight_lower_strands_span() {
    let (c, ring) = curve(8, 17, 1);
    for (p, want) in [(2usize, 24usize), (1, 20)] {
        let t = std::time::Instant::now();
        let d = 8 - p;
        let found = syz_pencil::sample_pencils(&c, d, want, 1 << 22, 1, SearchOptions::default());
        let srcs: Vec<PencilSource> = found
            .pencils
            .iter()
            .map(|r| PencilSource::Rational(r.pencil()))
            .collect();
        let rep = gsc_span_test(&c, &ring, &srcs, p, GscOptions::default()).unwrap();
        println!("{} {:?}", serde_json::to_string(&rep).unwrap(), t.elapsed());
        assert!(rep.verdict);
    }
}
