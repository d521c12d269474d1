//! Exterior powers: ordered wedge bases and induced maps.

use std::collections::HashMap;

use syz_linalg::{binomial, determinant, Field, Matrix};

/// Strictly increasing index tuples of length `p` from `0..n`, in lexicographic order.
pub fn wedge_index(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, p, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, p));
    if p <= n {
        rec(n, p, 0, &mut Vec::with_capacity(p), &mut out);
    }
    out
}

/// Basis of ∧^p k^n with a reverse index.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    pub n: usize,
    pub p: usize,
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(n: usize, p: usize) -> Self {
        let tuples = wedge_index(n, p);
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { n, p, tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, t: &[usize]) -> usize {
        self.index[t]
    }

    /// Index and sign of the wedge of an arbitrary (possibly unsorted) tuple,
    /// or None if it repeats an index.
    pub fn signed_index(&self, t: &[usize]) -> Option<(usize, bool)> {
        let mut v = t.to_vec();
        let mut odd = false;
        // insertion sort counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
            if j > 0 && v[j - 1] == v[j] {
                return None;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((self.index[&v], odd))
    }
}

/// Matrix of ∧^p A where the rows of `a` (k × n) are images of a basis of a
/// k-dimensional space: row S of the result holds the p × p minors a[S, T].
pub fn wedge_power<F: Field>(a: &Matrix<F>, p: usize) -> Matrix<F> {
    let src = wedge_index(a.rows(), p);
    let dst = wedge_index(a.cols(), p);
    let f = a.field().clone();
    Matrix::from_fn(f.clone(), src.len(), dst.len(), |i, j| {
        let s = &src[i];
        let t = &dst[j];
        if p == 0 {
            return f.one();
        }
        let minor = Matrix::from_fn(f.clone(), p, p, |r, c| a.get(s[r], t[c]).clone());
        determinant(&minor)
    })
}

/// Coordinates of v_1 ∧ … ∧ v_p in the wedge basis of ∧^p k^n.
pub fn wedge_of_vectors<F: Field>(f: &F, n: usize, vs: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let m = Matrix::from_rows(f.clone(), n, vs.to_vec());
    wedge_power(&m, vs.len()).row(0).to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use syz_linalg::PrimeField;

    #[test]
    fn small_wedge_bases() {
        assert_eq!(wedge_index(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(wedge_index(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(wedge_index(8, 3).len(), 56);
        assert!(wedge_index(2, 3).is_empty());
    }

    #[test]
    fn signed_index_tracks_parity() {
        let b = WedgeBasis::new(5, 3);
        assert_eq!(b.signed_index(&[0, 2, 4]), Some((b.index_of(&[0, 2, 4]), false)));
        assert_eq!(b.signed_index(&[2, 0, 4]), Some((b.index_of(&[0, 2, 4]), true)));
        assert_eq!(b.signed_index(&[4, 2, 0]), Some((b.index_of(&[0, 2, 4]), true)));
        assert_eq!(b.signed_index(&[1, 2, 1]), None);
    }

    #[test]
    fn wedge_of_basis_vectors_is_a_basis_vector() {
        let f = PrimeField::new(7).unwrap();
        let e = |i: usize| (0..4).map(|j| u32::from(i == j)).collect::<Vec<u32>>();
        let w = wedge_of_vectors(&f, 4, &[e(2), e(0)]);
        let b = WedgeBasis::new(4, 2);
        let mut expect = vec![0u32; 6];
        expect[b.index_of(&[0, 2])] = 6; // e2 ∧ e0 = -e0 ∧ e2
        assert_eq!(w, expect);
    }
}
