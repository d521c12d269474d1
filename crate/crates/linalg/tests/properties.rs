use proptest::prelude::*;
use syz_linalg::{Field, Matrix, PrimeField, Tensor3};

fn matrix_strategy(p: u32, max: usize) -> impl Strategy<Value = (usize, usize, Vec<u32>)> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| (Just(r), Just(c), prop::collection::vec(0..p, r * c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_plus_nullity_is_cols((r, c, data) in matrix_strategy(31, 9)) {
        let f = PrimeField::new(31).unwrap();
        let m = Matrix::from_vec(f, r, c, data);
        let (rank, ker) = m.rank_kernel();
        prop_assert_eq!(rank + ker.len(), c);
        prop_assert_eq!(rank, m.rank());
        prop_assert_eq!(rank, m.transpose().rank());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        // kernel basis is independent
        if !ker.is_empty() {
            prop_assert_eq!(Matrix::from_rows(f, c, ker.clone()).rank(), ker.len());
        }
    }

    #[test]
    fn rank_of_product_is_bounded(
        (r, k, a) in matrix_strategy(13, 7),
        cols in 0usize..8,
        seed in prop::collection::vec(0u32..13, 64),
    ) {
        let f = PrimeField::new(13).unwrap();
        let a = Matrix::from_vec(f, r, k, a);
        let b = Matrix::from_fn(f, k, cols, |i, j| seed[(i * 8 + j) % 64]);
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn flatten_rank_counts_independent_middle_factors(
        r in 0usize..5,
        entries in prop::collection::vec(0u32..101, 200),
    ) {
        let f = PrimeField::new(101).unwrap();
        let dims = (3, 6, 4);
        // middle factors e_j + (small perturbation in the last coordinate) stay independent
        let mut t = Tensor3::zeros(f, dims);
        for s in 0..r {
            let u: Vec<u32> = (0..3).map(|i| entries[s * 13 + i] % 100 + 1).collect();
            let mut v = vec![0u32; 6];
            v[s] = 1;
            v[5] = entries[s * 13 + 3];
            let w: Vec<u32> = (0..4).map(|i| entries[s * 13 + 4 + i] % 100 + 1).collect();
            t.add_pure(&u, &v, &w);
        }
        prop_assert_eq!(t.flatten_rank(), r);
        prop_assert_eq!(t.middle_support().rows(), r);
    }

    #[test]
    fn intersection_dimension_formula(
        a in prop::collection::vec(0u32..7, 20),
        b in prop::collection::vec(0u32..7, 25),
    ) {
        let f = PrimeField::new(7).unwrap();
        let a = Matrix::from_vec(f, 4, 5, a);
        let b = Matrix::from_vec(f, 5, 5, b);
        let meet = Matrix::intersect_rowspaces(&a, &b).unwrap();
        let sum = a.vstack(&b).unwrap().rank();
        prop_assert_eq!(a.rank() + b.rank(), sum + meet.rows());
        let ea = a.rref();
        let eb = b.rref();
        for i in 0..meet.rows() {
            prop_assert!(ea.contains(meet.row(i)) && eb.contains(meet.row(i)));
        }
    }

    #[test]
    fn field_axioms_hold(x in 0u32..10007, y in 0u32..10007, z in 0u32..10007) {
        let f = PrimeField::new(10007).unwrap();
        prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
        prop_assert_eq!(f.sub(&f.add(&x, &y), &y), x);
        if x != 0 {
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
        }
    }
}
