//! Symmetric powers with monomial bases, and the symmetric algebra as a module.

use std::collections::HashMap;

use syz_linalg::{binomial, Field, Tensor3};

use crate::module::{GradedModule, Weights};

/// Monomials of degree q in n variables as sorted index multisets, in lexicographic order.
#[derive(Clone, Debug)]
pub struct SymBasis {
    pub n: usize,
    pub q: usize,
    pub monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SymBasis {
    pub fn new(n: usize, q: usize) -> Self {
        fn rec(n: usize, q: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == q {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(n, q, i, cur, out);
                cur.pop();
            }
        }
        let mut monomials = Vec::with_capacity(binomial(n + q, q).max(1));
        if n > 0 || q == 0 {
            rec(n, q, 0, &mut Vec::new(), &mut monomials);
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { n, q, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &[usize]) -> usize {
        self.index[m]
    }

    /// Index of the product of two monomials (of degrees summing to self.q).
    pub fn product_index(&self, a: &[usize], b: &[usize]) -> usize {
        let mut m: Vec<usize> = a.iter().chain(b).copied().collect();
        m.sort_unstable();
        self.index[&m]
    }

    pub fn exponent_vector(&self, i: usize) -> Vec<i32> {
        let mut e = vec![0; self.n];
        for &x in &self.monomials[i] {
            e[x] += 1;
        }
        e
    }
}

/// Sym(V) truncated at degree `qmax`, multigraded by exponent vectors.
pub fn symmetric_algebra<F: Field>(field: &F, n: usize, qmax: usize) -> GradedModule<F> {
    let bases: Vec<SymBasis> = (0..=qmax).map(|q| SymBasis::new(n, q)).collect();
    let mut mult = Vec::new();
    for q in 0..qmax {
        let mut t = Tensor3::zeros(field.clone(), (n, bases[q].len(), bases[q + 1].len()));
        for a in 0..n {
            for (i, m) in bases[q].monomials.iter().enumerate() {
                let j = bases[q + 1].product_index(&[a], m);
                t.set(a, i, j, field.one());
            }
        }
        mult.push(t);
    }
    let weights = Weights {
        v: (0..n).map(|a| (0..n).map(|b| i32::from(a == b)).collect()).collect(),
        pieces: bases
            .iter()
            .map(|b| (0..b.len()).map(|i| b.exponent_vector(i)).collect())
            .collect(),
    };
    let dims = bases.iter().map(SymBasis::len).collect();
    GradedModule::new(field.clone(), n, dims, mult, Some(weights)).expect("symmetric algebra is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(SymBasis::new(8, 2).len(), 36);
        assert_eq!(SymBasis::new(8, 3).len(), 120);
        assert_eq!(SymBasis::new(3, 0).len(), 1);
        let b = SymBasis::new(3, 2);
        assert_eq!(b.monomials[0], vec![0, 0]);
        assert_eq!(b.product_index(&[2], &[0]), b.index_of(&[0, 2]));
    }
}
