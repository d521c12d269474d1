//! K_{p,1} in quadric form: ∧^{p-1}V ⊗ I_2, and the linear strand map.

use syz_koszul::{
    apply_differential, chain_len, koszul_differential, symmetric_algebra, GradedModule, KoszulClass, KoszulError,
    Repr, SymBasis, WedgeBasis,
};
use syz_linalg::{binomial, Field, Tensor3};

use crate::error::SyzygyError;

/// Coefficients over ∧^{p-1}V ⊗ Sym²V, flattened as `wedge * dim Sym² + monomial`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricRep<F: Field> {
    pub p: usize,
    pub n: usize,
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> QuadricRep<F> {
    pub fn sym2_len(&self) -> usize {
        SymBasis::new(self.n, 2).len()
    }

    /// The Sym² component paired with wedge basis element `t`.
    pub fn slice(&self, t: usize) -> &[F::Elem] {
        let s = self.sym2_len();
        &self.coeffs[t * s..(t + 1) * s]
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.coeffs.iter().all(|x| f.is_zero(x))
    }
}

/// Checks that mult[0] identifies V with M_1 (v_a · 1 = e_a) and dim M_0 = 1.
pub fn check_linear<F: Field>(m: &GradedModule<F>) -> Result<(), SyzygyError> {
    let f = m.field();
    if m.piece_dim(0) != 1 || m.piece_dim(1) != m.dim_v() {
        return Err(SyzygyError::NotLinear(format!(
            "pieces {:?} with dim V = {}",
            m.piece_dims(),
            m.dim_v()
        )));
    }
    for a in 0..m.dim_v() {
        let act = m.action(0, a, 0);
        if act.len() != 1 || act[0].0 != a || act[0].1 != f.one() {
            return Err(SyzygyError::NotLinear(format!(
                "v_{a} · 1 is not the basis vector e_{a}"
            )));
        }
    }
    Ok(())
}

/// Quadric form of a native K_{p,1} cycle: the Sym-level differential of z ∈ ∧^pV ⊗ V,
/// which lands in ∧^{p-1}V ⊗ I_2 (asserted).
pub fn to_quadric_rep<F: Field>(m: &GradedModule<F>, cls: &KoszulClass<F>) -> Result<QuadricRep<F>, SyzygyError> {
    check_linear(m)?;
    let p = cls.pos.p;
    if cls.pos.q != 1 || cls.repr != Repr::Native || p == 0 {
        return Err(SyzygyError::Invariant(format!(
            "quadric form needs a native class at q = 1, p ≥ 1, got {:?}",
            cls.pos
        )));
    }
    let f = m.field();
    let dz = apply_differential(m, p, 1, &cls.coeffs)?;
    if dz.iter().any(|x| !f.is_zero(x)) {
        return Err(KoszulError::NotACycle.into());
    }
    let n = m.dim_v();
    let sym = symmetric_algebra(f, n, 2);
    let coeffs = apply_differential(&sym, p, 1, &cls.coeffs)?;
    let rep = QuadricRep { p, n, coeffs };
    // every Sym² slice must be a quadric through the variety
    let to_m2 = m.symmetric_map(2)?;
    for t in 0..binomial(n, p - 1) {
        let image = to_m2.vec_mul(rep.slice(t));
        if image.iter().any(|x| !f.is_zero(x)) {
            return Err(SyzygyError::Invariant("quadric form leaves ∧^{p-1}V ⊗ I_2".into()));
        }
    }
    Ok(rep)
}

/// A native cycle whose quadric form is `rep` (unique modulo boundaries).
pub fn from_quadric_rep<F: Field>(m: &GradedModule<F>, rep: &QuadricRep<F>) -> Result<KoszulClass<F>, SyzygyError> {
    check_linear(m)?;
    let f = m.field();
    let sym = symmetric_algebra(f, rep.n, 2);
    let d = koszul_differential(&sym, rep.p, 1)?;
    let z = d
        .solve(&rep.coeffs)
        .map_err(|_| SyzygyError::Invariant("quadric form is not a Koszul cycle of the ideal".into()))?;
    debug_assert_eq!(z.len(), chain_len(m, rep.p, 1));
    Ok(KoszulClass::native(rep.p, 1, z))
}

/// ∂^ℓ_p(α) = Σ dσ_i ⊗ Q_i in ∧^{p-2}V ⊗ V ⊗ Sym²V, with
/// dσ = Σ_j (−1)^j e_{T∖t_j} ⊗ e_{t_j} for σ = e_T.
pub fn linear_strand<F: Field>(rep: &QuadricRep<F>, f: &F) -> Result<Tensor3<F>, SyzygyError> {
    let p = rep.p;
    if p < 2 {
        return Err(SyzygyError::UseSymmetricRank(p));
    }
    let n = rep.n;
    let src = WedgeBasis::new(n, p - 1);
    let dst = WedgeBasis::new(n, p - 2);
    let s2 = rep.sym2_len();
    let mut t = Tensor3::zeros(f.clone(), (dst.len(), n, s2));
    let mut rest = Vec::with_capacity(p);
    for (ti, tuple) in src.tuples.iter().enumerate() {
        let slice = rep.slice(ti);
        if slice.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        for (j0, &a) in tuple.iter().enumerate() {
            rest.clear();
            rest.extend(tuple.iter().enumerate().filter(|&(i, _)| i != j0).map(|(_, &x)| x));
            let r = dst.index_of(&rest);
            let negate = j0 % 2 == 0;
            for (k, c) in slice.iter().enumerate() {
                if !f.is_zero(c) {
                    t.add_to(r, a, k, &if negate { f.neg(c) } else { c.clone() });
                }
            }
        }
    }
    Ok(t)
}

/// The product of two linear forms in Sym²V.
pub fn sym2_product<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len();
    let basis = SymBasis::new(n, 2);
    let mut out = vec![f.zero(); basis.len()];
    for (r, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (s, y) in b.iter().enumerate() {
            if !f.is_zero(y) {
                let i = basis.product_index(&[r], &[s]);
                out[i] = f.add(&out[i], &f.mul(x, y));
            }
        }
    }
    out
}
