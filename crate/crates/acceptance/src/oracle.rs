//! Reference computations written without the production elimination or
//! flattening code paths.

use rand::Rng;
use syz_koszul::{
    koszul_cohomology, koszul_differential, symmetric_algebra, wedge_index, wedge_of_vectors, GradedModule,
    KoszulClass, KoszulGroup, SymBasis, WedgeBasis,
};
use syz_linalg::{Field, Matrix, PrimeField, Tensor3};
use syz_syzygy::syzygy_rank;

/// Rank by division-free elimination on plain integers: rows are combined as
/// `lead * row - row[c] * pivot_row`, so no inverse is ever taken.
pub fn fraction_free_rank(p: u64, rows: &[Vec<u64>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pr = m[rank].clone();
        for r in 0..m.len() {
            if r == rank || m[r][c] == 0 {
                continue;
            }
            let f = m[r][c];
            for j in 0..ncols {
                let a = (pr[c] * m[r][j]) % p;
                let b = (f * pr[j]) % p;
                m[r][j] = (a + p - b) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// An r × c matrix of rank at most `cap`, as a product of two random factors.
pub fn random_low_rank<R: Rng>(f: &PrimeField, rng: &mut R, r: usize, c: usize, cap: usize) -> Matrix<PrimeField> {
    let k = cap.min(r).min(c);
    let a = Matrix::from_fn(f.clone(), r, k, |_, _| f.random(rng));
    let b = Matrix::from_fn(f.clone(), k, c, |_, _| f.random(rng));
    a.mul(&b).unwrap()
}

/// Rational normal curve of degree e: M_q = polynomials of degree ≤ qe.
pub fn rational_normal_curve(f: &PrimeField, e: usize, qmax: usize) -> GradedModule<PrimeField> {
    let dims: Vec<usize> = (0..=qmax).map(|q| q * e + 1).collect();
    let mult = (0..qmax)
        .map(|q| {
            let mut t = Tensor3::zeros(f.clone(), (e + 1, dims[q], dims[q + 1]));
            for a in 0..=e {
                for m in 0..dims[q] {
                    t.set(a, m, a + m, f.one());
                }
            }
            t
        })
        .collect();
    GradedModule::new(f.clone(), e + 1, dims, mult, None).unwrap()
}

/// Sym(V)/(I) truncated at degree 2 for a random k-dimensional space I of quadrics.
pub fn random_quadric_quotient<R: Rng>(f: &PrimeField, n: usize, k: usize, rng: &mut R) -> GradedModule<PrimeField> {
    let s = symmetric_algebra(f, n, 2);
    let len = SymBasis::new(n, 2).len();
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|_| (0..len).map(|_| rng.gen_range(0..f.modulus())).collect())
        .collect();
    let subs = vec![
        Matrix::zeros(f.clone(), 0, 1),
        Matrix::zeros(f.clone(), 0, n),
        Matrix::from_rows(f.clone(), len, rows).rowspace(),
    ];
    s.quotient(&subs).unwrap()
}

/// Every r-dimensional subspace of GF(q)^n, as a reduced echelon basis.
pub fn subspaces(f: &PrimeField, n: usize, r: usize) -> Vec<Matrix<PrimeField>> {
    let q = f.modulus() as u64;
    let mut out = Vec::new();
    for pivots in wedge_index(n, r) {
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                ((pivots[i] + 1)..n)
                    .filter(|j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        for mut code in 0..q.pow(free.len() as u32) {
            let mut m = Matrix::zeros(f.clone(), r, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            for &(i, j) in &free {
                m.set(i, j, (code % q) as u32);
                code /= q;
            }
            out.push(m);
        }
    }
    out
}

/// Classes carried by cycles in ∧^p W ⊗ M_1: the kernel of d on the span of
/// lifted wedge products, mapped to class coordinates.
pub fn reachable(
    m: &GradedModule<PrimeField>,
    group: &KoszulGroup<PrimeField>,
    w: &Matrix<PrimeField>,
    p: usize,
) -> Matrix<PrimeField> {
    let f = m.field();
    let n = m.dim_v();
    let dm = m.piece_dim(1);
    let wedge = WedgeBasis::new(w.rows(), p);
    let mut lifted = Vec::new();
    for t in &wedge.tuples {
        let vs: Vec<Vec<u32>> = t.iter().map(|&i| w.row(i).to_vec()).collect();
        let sigma = wedge_of_vectors(f, n, &vs);
        for e in 0..dm {
            let mut x = vec![0u32; sigma.len() * dm];
            for (s, c) in sigma.iter().enumerate() {
                x[s * dm + e] = *c;
            }
            lifted.push(x);
        }
    }
    let d = koszul_differential(m, p, 1).unwrap();
    let basis = Matrix::from_rows(f.clone(), d.cols(), lifted);
    let images = d.mul(&basis.transpose()).unwrap();
    let coords: Vec<Vec<u32>> = images
        .kernel()
        .iter()
        .map(|c| group.class_coords(&basis.vec_mul(c)).unwrap())
        .collect();
    Matrix::from_rows(f.clone(), group.dim(), coords).rowspace()
}

/// Minimal dim W for every class, indexed by the base-q code of its coordinates.
pub fn exhaustive_ranks(m: &GradedModule<PrimeField>, group: &KoszulGroup<PrimeField>, p: usize) -> Vec<usize> {
    let f = m.field();
    let q = f.modulus() as usize;
    let code = |v: &[u32]| v.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize);
    let mut rank = vec![usize::MAX; q.pow(group.dim() as u32)];
    rank[0] = 0;
    for r in 1..=m.dim_v() {
        for w in subspaces(f, m.dim_v(), r) {
            let img = reachable(m, group, &w, p);
            for mut c in 0..q.pow(img.rows() as u32) {
                let coeffs: Vec<u32> = (0..img.rows())
                    .map(|_| {
                        let x = (c % q) as u32;
                        c /= q;
                        x
                    })
                    .collect();
                let slot = &mut rank[code(&img.vec_mul(&coeffs))];
                *slot = (*slot).min(r);
            }
        }
    }
    rank
}

/// Compares syzygy_rank with the exhaustive search on every nonzero class of
/// K_{p,1}(m) (skipped when the group has more than `max_dim` dimensions).
/// At p = 1 the search over GF(q) subspaces matches the rational rank.
/// Returns the number of classes compared, or the first mismatch.
pub fn compare_ranks(m: &GradedModule<PrimeField>, p: usize, max_dim: usize) -> Result<usize, String> {
    let f = m.field();
    let q = f.modulus() as usize;
    let group = koszul_cohomology(m, p, 1).map_err(|e| e.to_string())?;
    let k = group.dim();
    if k == 0 || k > max_dim {
        return Ok(0);
    }
    let oracle = exhaustive_ranks(m, &group, p);
    let basis = group.basis_vectors();
    for code in 1..q.pow(k as u32) {
        let coords: Vec<u32> = (0..k).map(|i| ((code / q.pow(i as u32)) % q) as u32).collect();
        let mut z = vec![0u32; group.chain_len];
        for (b, c) in basis.iter().zip(&coords) {
            f.axpy(&mut z, c, b);
        }
        let cert = syzygy_rank(m, &KoszulClass::native(p, 1, z)).map_err(|e| e.to_string())?;
        let got = if p == 1 { cert.rational_rank } else { cert.rank };
        if got != oracle[code] {
            return Err(format!(
                "p = {p}, class {coords:?}: flattening {got}, exhaustive {}",
                oracle[code]
            ));
        }
    }
    Ok(q.pow(k as u32) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_free_rank_of_small_cases() {
        assert_eq!(fraction_free_rank(7, &[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(fraction_free_rank(7, &[vec![1, 2], vec![3, 4]]), 2);
        assert_eq!(fraction_free_rank(5, &[]), 0);
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        let f = PrimeField::new(3).unwrap();
        // [4 choose 2]_3 = 130
        assert_eq!(subspaces(&f, 4, 2).len(), 130);
        assert_eq!(subspaces(&f, 3, 1).len(), 13);
    }
}
