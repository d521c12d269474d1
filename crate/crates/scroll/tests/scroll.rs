use std::time::Instant;

use syz_linalg::{binomial, Execution, PrimeField};
use syz_scroll::*;

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn strand_table_matches_the_scroll_formula() {
    let f = gf(10007);
    let t = Instant::now();
    let mut rows = 0;
    for ff in 2..=6 {
        for e in partitions(ff) {
            let s = build_scroll(&f, &e, 3).unwrap();
            assert_eq!(s.module().dim_v(), ff + e.len());
            for row in strand_table(&s, Execution::Parallel).unwrap() {
                assert_eq!(row.k_p1, row.p * binomial(ff, row.p + 1));
                assert_eq!(row.k_p2, 0);
                rows += 1;
            }
        }
    }
    println!("{rows} strand rows in {:?}", t.elapsed());
}

#[test]
fn spec_examples() {
    let f = gf(101);
    let s = build_scroll(&f, &[2, 1], 3).unwrap();
    assert_eq!(s.module().dim_v(), 5);
    assert_eq!(scroll_strand(&s, 2, Execution::Sequential).unwrap().k_p1, 2);
    let s = build_scroll(&f, &[2, 2], 3).unwrap();
    assert_eq!(section_dim(&[2, 2], 1, 1), 4);
    assert_eq!(scroll_strand(&s, 3, Execution::Sequential).unwrap().k_p1, 3);
    let s = build_scroll(&f, &[1, 1], 3).unwrap();
    assert_eq!(scroll_strand(&s, 1, Execution::Sequential).unwrap().k_p1, 1);
    assert_eq!(scroll_strand(&s, 2, Execution::Sequential).unwrap().k_p1, 0);
}

#[test]
fn cones_have_the_same_strands() {
    let f = gf(101);
    let s = build_scroll(&f, &[2, 1, 0], 3).unwrap();
    for row in strand_table(&s, Execution::Parallel).unwrap() {
        assert_eq!(row.k_p1, row.p * binomial(3, row.p + 1));
    }
}

#[test]
fn last_strand_law_holds() {
    let f = gf(10007);
    for ff in 3..=5 {
        for e in partitions(ff) {
            let s = build_scroll(&f, &e, 2).unwrap();
            let r = scroll_last_strand_law(&s, 7, Execution::Parallel).unwrap();
            assert!(r.span_ok && r.degree_ok, "{r:?}");
            assert_eq!(r.target_dim, ff - 1);
            assert!(r.ranks.iter().all(|&k| k == ff));
        }
    }
    let s = build_scroll(&f, &[1, 1], 2).unwrap();
    assert!(matches!(
        scroll_last_strand_law(&s, 7, Execution::Parallel),
        Err(ScrollError::LawNeedsThree)
    ));
}

mod props {
    use proptest::prelude::*;
    use syz_scroll::{section_basis, section_dim};

    proptest! {
        #[test]
        fn section_counts_match_enumeration(mut e in proptest::collection::vec(0usize..5, 1..4), a in 0usize..4, b in 0usize..6) {
            e.sort_unstable_by(|x, y| y.cmp(x));
            prop_assert_eq!(section_basis(&e, a, b).len(), section_dim(&e, a, b));
            // h^0(H − R) = h^0(H) − d when every e_i ≥ 1
            if e.iter().all(|&x| x >= 1) {
                prop_assert_eq!(section_dim(&e, 1, 1), section_dim(&e, 1, 0) - e.len());
            }
        }
    }
}
