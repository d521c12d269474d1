//! pr : K_{p,1}(D, ω_D) → K_{p-1,1}(C, ω_C), two ways.
//!
//! Write α = α₁ + α₂′⊗s + α₃′∧s + α₄ over the blocks
//! V₁ = ∧^pV_C ⊗ V_C, V₂ = ∧^pV_C ⊗ s, V₃ = ∧^{p-1}V_C ∧ s ⊗ V_C, V₄ = ∧^{p-1}V_C ∧ s ⊗ s.
//! The contraction with the node evaluation gives (−1)^p α₃′; the explicit
//! formula gives dα₂′ + (−1)^p α₃′. Both need α₄ = 0.

use serde::Serialize;
use syz_koszul::{apply_differential, chain_len, KoszulClass, WedgeBasis};
use syz_linalg::{Field, PrimeField};

use crate::context::ProjectionContext;
use crate::error::ProjectionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Iota,
    QxFormula,
}

/// The four blocks of a D-chain, each in C coordinates.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub p: usize,
    /// ∧^pV_C ⊗ V_C.
    pub alpha1: Vec<u32>,
    /// ∧^pV_C (coefficient of ⊗ s).
    pub alpha2: Vec<u32>,
    /// ∧^{p-1}V_C ⊗ V_C (the factor before ∧ s).
    pub alpha3: Vec<u32>,
    /// ∧^{p-1}V_C (coefficient of ∧ s ⊗ s).
    pub alpha4: Vec<u32>,
}

/// Splits α ∈ ∧^pV_D ⊗ V_D along H^0(ω_D) = H^0(ω_C) ⊕ ⟨s⟩ (s is the last basis vector).
pub fn decompose(ctx: &ProjectionContext, p: usize, alpha: &[u32]) -> Result<Decomposition, ProjectionError> {
    let g = ctx.genus();
    let n = g + 1;
    let dbasis = WedgeBasis::new(n, p);
    if alpha.len() != dbasis.len() * n {
        return Err(ProjectionError::Invariant(format!(
            "chain of length {} at p = {p}",
            alpha.len()
        )));
    }
    let cp = WedgeBasis::new(g, p);
    let cq = WedgeBasis::new(g, p.saturating_sub(1));
    let mut d = Decomposition {
        p,
        alpha1: vec![0; cp.len() * g],
        alpha2: vec![0; cp.len()],
        alpha3: vec![0; if p > 0 { cq.len() * g } else { 0 }],
        alpha4: vec![0; if p > 0 { cq.len() } else { 0 }],
    };
    for (ti, t) in dbasis.tuples.iter().enumerate() {
        let has_s = t.last() == Some(&g);
        for m in 0..n {
            let c = alpha[ti * n + m];
            if c == 0 {
                continue;
            }
            match (has_s, m == g) {
                (false, false) => d.alpha1[cp.index_of(t) * g + m] = c,
                (false, true) => d.alpha2[cp.index_of(t)] = c,
                (true, false) => d.alpha3[cq.index_of(&t[..p - 1]) * g + m] = c,
                (true, true) => d.alpha4[cq.index_of(&t[..p - 1])] = c,
            }
        }
    }
    Ok(d)
}

/// Contraction with a functional on the wedge factor:
/// ι(e_T ⊗ m) = Σ_j (−1)^j ev(t_j) e_{T∖t_j} ⊗ m, j counted from 1.
pub fn contract(f: &PrimeField, ev: &[u32], p: usize, dim_m: usize, x: &[u32]) -> Vec<u32> {
    let n = ev.len();
    let src = WedgeBasis::new(n, p);
    let dst = WedgeBasis::new(n, p - 1);
    let mut out = vec![0u32; dst.len() * dim_m];
    let mut rest = Vec::with_capacity(p);
    for (ti, t) in src.tuples.iter().enumerate() {
        for (j0, &a) in t.iter().enumerate() {
            if ev[a] == 0 {
                continue;
            }
            rest.clear();
            rest.extend(t.iter().enumerate().filter(|&(i, _)| i != j0).map(|(_, &v)| v));
            let r = dst.index_of(&rest);
            let sign = if j0 % 2 == 0 { f.neg(&ev[a]) } else { ev[a] };
            for m in 0..dim_m {
                let c = x[ti * dim_m + m];
                if c != 0 {
                    out[r * dim_m + m] = f.add(&out[r * dim_m + m], &f.mul(&sign, &c));
                }
            }
        }
    }
    out
}

/// The projected chain in ∧^{p-1}V_C ⊗ V_C (a cycle of C, asserted).
pub fn project_class(
    ctx: &ProjectionContext,
    cls: &KoszulClass<PrimeField>,
    mode: Mode,
) -> Result<KoszulClass<PrimeField>, ProjectionError> {
    let f = ctx.curve.field();
    let p = cls.pos.p;
    if p == 0 || cls.pos.q != 1 {
        return Err(ProjectionError::Invariant(format!(
            "projection starts at K_{{p,1}} with p ≥ 1, got {:?}",
            cls.pos
        )));
    }
    let dm = ctx.glued_ring.module();
    if apply_differential(dm, p, 1, &cls.coeffs)?.iter().any(|&c| c != 0) {
        return Err(syz_koszul::KoszulError::NotACycle.into());
    }
    let g = ctx.genus();
    let cm = ctx.ring.module();
    let out = match mode {
        Mode::Iota => {
            let full = contract(f, &ctx.ev, p, g + 1, &cls.coeffs);
            // back to C coordinates: no s in the wedge (ev vanishes on V_C), and the s column must vanish
            let dq = WedgeBasis::new(g + 1, p - 1);
            let cq = WedgeBasis::new(g, p - 1);
            let mut out = vec![0u32; cq.len() * g];
            for (ti, t) in dq.tuples.iter().enumerate() {
                for m in 0..=g {
                    let c = full[ti * (g + 1) + m];
                    if c == 0 {
                        continue;
                    }
                    if m == g || t.last() == Some(&g) {
                        return Err(ProjectionError::Alpha4Nonzero);
                    }
                    out[cq.index_of(t) * g + m] = c;
                }
            }
            out
        }
        Mode::QxFormula => {
            let d = decompose(ctx, p, &cls.coeffs)?;
            if d.alpha4.iter().any(|&c| c != 0) {
                return Err(ProjectionError::Alpha4Nonzero);
            }
            let mut out = apply_differential(cm, p, 0, &d.alpha2)?;
            let sign = if p % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            f.axpy(&mut out, &sign, &d.alpha3);
            out
        }
    };
    debug_assert_eq!(out.len(), chain_len(cm, p - 1, 1));
    if apply_differential(cm, p - 1, 1, &out)?.iter().any(|&c| c != 0) {
        return Err(ProjectionError::Invariant("projection is not a cycle on C".into()));
    }
    Ok(KoszulClass::native(p - 1, 1, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_signs() {
        let f = PrimeField::new(7).unwrap();
        // ev = e_2^*, n = 3, p = 2, dim_m = 1
        let ev = [0u32, 0, 1];
        let src = WedgeBasis::new(3, 2);
        let mut x = vec![0u32; src.len()];
        x[src.index_of(&[0, 2])] = 1;
        x[src.index_of(&[1, 2])] = 2;
        x[src.index_of(&[0, 1])] = 5;
        let out = contract(&f, &ev, 2, 1, &x);
        // e_2 sits in position 2 of (0, 2) and of (1, 2): sign +1
        assert_eq!(out, vec![1, 2, 0]);
    }

    #[test]
    fn contraction_twice_is_zero() {
        let f = PrimeField::new(11).unwrap();
        let ev = [3u32, 1, 4, 1];
        let src = WedgeBasis::new(4, 3);
        let x: Vec<u32> = (0..src.len() as u32 * 2).map(|i| (i * 7 + 3) % 11).collect();
        let once = contract(&f, &ev, 3, 2, &x);
        assert!(contract(&f, &ev, 2, 2, &once).iter().all(|&c| c == 0));
    }
}
