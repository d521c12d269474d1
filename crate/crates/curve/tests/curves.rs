use proptest::prelude::*;
use syz_curve::*;
use syz_koszul::{koszul_cohomology, koszul_differential};
use syz_linalg::{poly, Field, PrimeField};

const P: u32 = 10007;

fn ring(g: usize, seed: u64) -> (NodalRationalCurve, CanonicalRing<PrimeField>) {
    let (c, r, _) = build_canonical(&CurveSpec::random(g, P, seed), 3, 10).unwrap();
    (c, r)
}

#[test]
fn canonical_basis_satisfies_residue_conditions() {
    for g in [1, 3, 5, 8] {
        let c = build_curve(&CurveSpec::random(g, P, 7)).unwrap();
        assert_eq!(c.canonical_basis().len(), g);
        for h in c.canonical_basis() {
            assert!(c.residues(h).iter().all(|&(a, b)| c.field().add(&a, &b) == 0));
        }
    }
}

#[test]
fn genus_eight_piece_dimensions() {
    let (_, r) = ring(8, 1);
    assert_eq!(r.module().piece_dims(), &[1, 8, 21, 35]);
}

#[test]
fn quadric_counts() {
    for (g, i2) in [(3, 0), (4, 1), (8, 15)] {
        let (_, r) = ring(g, 2);
        let (q2, q3) = quadrics_cubics(r.module()).unwrap();
        assert_eq!(q2.rows(), i2, "g = {g}");
        assert_eq!(q3.rows(), (g + 2) * (g + 1) * g / 6 - 5 * (g - 1));
    }
    let (_, r) = ring(3, 2);
    assert_eq!(r.module().piece_dim(2), 6);
}

#[test]
fn genus_eight_koszul_shapes_and_k11() {
    let (_, r) = ring(8, 1);
    let d = koszul_differential(r.module(), 3, 1).unwrap();
    assert_eq!((d.cols(), d.rows()), (56 * 8, 28 * 21));
    assert_eq!(koszul_cohomology(r.module(), 1, 1).unwrap().dim(), 15);
    assert!(r.module().check_generated_in_degree_zero().is_ok());
}

#[test]
fn from_pencil_curves_carry_their_map() {
    let c = build_curve(&CurveSpec::from_pencil(8, P, 4)).unwrap();
    let (u, v) = c.seed_map().unwrap();
    let f = c.field();
    assert_eq!(poly::degree(f, u).max(poly::degree(f, v)), Some(5));
    for &(x, y) in c.pairs() {
        let lhs = f.mul(&poly::eval(f, u, &x), &poly::eval(f, v, &y));
        let rhs = f.mul(&poly::eval(f, u, &y), &poly::eval(f, v, &x));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn twist_and_quotient_dimensions() {
    let (c, r) = ring(8, 3);
    let pts: Vec<u32> = (0..P).filter(|&t| !c.is_node_coordinate(t)).take(2).collect();
    let (x, y) = (pts[0], pts[1]);
    let pieces = twist_at(&c, &r, x, y).unwrap();
    let tw = r.module().submodule(&pieces).unwrap();
    assert_eq!(tw.piece_dims(), &[0, 6, 19, 33]);
    let t = r.module().quotient(&pieces).unwrap();
    assert_eq!(t.piece_dims(), &[1, 2, 2, 2]);
    assert_eq!(twist_at(&c, &r, x, x).unwrap_err(), CurveError::EqualPoints);
    let node = c.pairs()[0].0;
    assert_eq!(twist_at(&c, &r, node, y).unwrap_err(), CurveError::PointAtNode(node));
}

#[test]
fn identify_points_adds_a_node() {
    let (c, _) = ring(6, 4);
    let pts: Vec<u32> = (0..P).filter(|&t| !c.is_node_coordinate(t)).take(2).collect();
    let (d, inc) = c.identify_points(pts[0], pts[1]).unwrap();
    assert_eq!(d.genus(), 7);
    assert_eq!(d.canonical_basis().len(), 7);
    assert_eq!(inc.rank(), 6);
    let f = d.field();
    for h in d.canonical_basis() {
        assert!(d.residues(h).iter().all(|&(a, b)| f.add(&a, &b) == 0));
    }
    let res = d.residues(&d.canonical_basis()[6]);
    assert_eq!(res[6], (1, f.neg(&1)));
    for h in &d.canonical_basis()[..6] {
        assert_eq!(d.residues(h)[6], (0, 0));
    }
    let rd = canonical_ring(&d, 3).unwrap();
    assert_eq!(rd.module().piece_dims(), &[1, 7, 18, 30]);
}

#[test]
fn bad_specs_are_rejected() {
    assert!(matches!(
        build_curve(&CurveSpec::random(8, 13, 0)),
        Err(CurveError::FieldTooSmall { .. })
    ));
    assert_eq!(
        build_curve(&CurveSpec::explicit(13, vec![(1, 2), (2, 3)])).unwrap_err(),
        CurveError::CoincidentPoints
    );
    assert!(build_curve(&CurveSpec::from_pencil(7, P, 0)).is_err());
}

#[test]
fn spec_json_round_trip() {
    let s = CurveSpec::explicit(13, vec![(1, 2), (3, 4)]);
    let json = serde_json::to_string(&s).unwrap();
    assert!(json.contains("\"pairs\":[[1,2],[3,4]]"));
    assert_eq!(serde_json::from_str::<CurveSpec>(&json).unwrap(), s);
    let r: CurveSpec = serde_json::from_str(r#"{"genus":6,"modulus":13,"seed":5,"mode":"from_pencil"}"#).unwrap();
    assert_eq!(r.mode, Mode::FromPencil);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_node_sets_give_genus_many_forms(seed in any::<u64>(), g in 1usize..7) {
        let c = build_curve(&CurveSpec::random(g, 101, seed)).unwrap();
        prop_assert_eq!(c.canonical_basis().len(), g);
        let f = c.field();
        for h in c.canonical_basis() {
            prop_assert!(poly::degree(f, h).map_or(true, |d| d <= 2 * g - 2));
            prop_assert!(c.residues(h).iter().all(|&(a, b)| f.add(&a, &b) == 0));
        }
    }
}
