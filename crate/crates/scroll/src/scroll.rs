//! Section rings of rational normal scrolls X = P(O(e_1) ⊕ … ⊕ O(e_d)).
//!
//! A section of aH − bR is a sum of symbols z^α t^j with |α| = a and
//! 0 ≤ j ≤ α·e − b, where t is the affine coordinate on the base line.

use std::collections::HashMap;

use syz_koszul::{GradedModule, SymBasis, Weights};
use syz_linalg::{Field, Tensor3};

use crate::error::ScrollError;

/// A symbol z^α t^j: α as a sorted index multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub alpha: Vec<usize>,
    pub j: usize,
}

#[derive(Clone, Debug)]
pub struct ScrollData<F: Field> {
    pub exponents: Vec<usize>,
    module: GradedModule<F>,
}

impl<F: Field> ScrollData<F> {
    pub fn f(&self) -> usize {
        self.exponents.iter().sum()
    }
    pub fn d(&self) -> usize {
        self.exponents.len()
    }
    /// Γ(X, aH) for a ≤ qmax as a module over V = H^0(H).
    pub fn module(&self) -> &GradedModule<F> {
        &self.module
    }
    pub fn field(&self) -> &F {
        self.module.field()
    }
}

/// dim H^0(aH − bR) = Σ_{|α|=a} max(0, α·e − b + 1).
pub fn section_dim(e: &[usize], a: usize, b: usize) -> usize {
    SymBasis::new(e.len(), a)
        .monomials
        .iter()
        .map(|m| (m.iter().map(|&i| e[i]).sum::<usize>() + 1).saturating_sub(b))
        .sum()
}

/// Symbols spanning H^0(aH − bR), ordered by α then j.
pub fn section_basis(e: &[usize], a: usize, b: usize) -> Vec<Symbol> {
    let mut out = Vec::new();
    for alpha in SymBasis::new(e.len(), a).monomials {
        let top = alpha.iter().map(|&i| e[i]).sum::<usize>();
        if top < b {
            continue;
        }
        for j in 0..=(top - b) {
            out.push(Symbol {
                alpha: alpha.clone(),
                j,
            });
        }
    }
    out
}

fn index_of(basis: &[Symbol]) -> HashMap<Symbol, usize> {
    basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
}

/// The scroll with the given exponents and its section ring up to degree `qmax`.
pub fn build_scroll<F: Field>(field: &F, e: &[usize], qmax: usize) -> Result<ScrollData<F>, ScrollError> {
    if e.windows(2).any(|w| w[0] < w[1]) {
        return Err(ScrollError::Unsorted(e.to_vec()));
    }
    if e.iter().sum::<usize>() < 2 {
        return Err(ScrollError::TooSmall(e.to_vec()));
    }
    let d = e.len();
    let pieces: Vec<Vec<Symbol>> = (0..=qmax).map(|a| section_basis(e, a, 0)).collect();
    for (a, basis) in pieces.iter().enumerate() {
        let combinatorial = section_dim(e, a, 0);
        if basis.len() != combinatorial {
            return Err(ScrollError::SectionCount {
                a,
                b: 0,
                combinatorial,
                enumerated: basis.len(),
            });
        }
    }
    let v = &pieces[1];
    debug_assert_eq!(v.len(), e.iter().sum::<usize>() + d);
    let mut mult = Vec::new();
    for a in 0..qmax {
        let next = index_of(&pieces[a + 1]);
        let mut t = Tensor3::zeros(field.clone(), (v.len(), pieces[a].len(), pieces[a + 1].len()));
        for (x, sx) in v.iter().enumerate() {
            for (m, sm) in pieces[a].iter().enumerate() {
                let mut alpha = sm.alpha.clone();
                alpha.extend(&sx.alpha);
                alpha.sort_unstable();
                let n = next[&Symbol { alpha, j: sx.j + sm.j }];
                t.set(x, m, n, field.one());
            }
        }
        mult.push(t);
    }
    let weight = |s: &Symbol| {
        let mut w = vec![0i32; d + 1];
        for &i in &s.alpha {
            w[i] += 1;
        }
        w[d] = s.j as i32;
        w
    };
    let weights = Weights {
        v: v.iter().map(weight).collect(),
        pieces: pieces.iter().map(|p| p.iter().map(weight).collect()).collect(),
    };
    let dims = pieces.iter().map(Vec::len).collect();
    let module = GradedModule::new(field.clone(), v.len(), dims, mult, Some(weights))?;
    Ok(ScrollData {
        exponents: e.to_vec(),
        module,
    })
}

/// V-coordinates of σ·m for m ∈ H^0(H − R) and σ = c_0 + c_1 t ∈ H^0(R).
pub fn ruling_multiple<F: Field>(field: &F, e: &[usize], c: (&F::Elem, &F::Elem)) -> Vec<Vec<F::Elem>> {
    let v = index_of(&section_basis(e, 1, 0));
    section_basis(e, 1, 1)
        .into_iter()
        .map(|m| {
            let mut row = vec![field.zero(); v.len()];
            row[v[&m]] = c.0.clone();
            let up = Symbol {
                alpha: m.alpha.clone(),
                j: m.j + 1,
            };
            let i = v[&up];
            row[i] = field.add(&row[i], c.1);
            row
        })
        .collect()
}
