//! Minimal-rank syzygies attached to a pencil and its scroll quadrics.
//!
//! For a member s of a pencil with complement t and φ = t/s, let W_s be the
//! canonical forms vanishing on the divisor of s. With a basis w̃_0 … w̃_p of
//! W_s the class Σ_j (−1)^j ∧_{i≠j} w̃_i ⊗ φw̃_j is a Koszul cycle in
//! ∧^p W_s ⊗ M_1.

use syz_curve::CanonicalRing;
use syz_koszul::{
    apply_differential, koszul_cohomology, restricted_chain_map, restricted_cohomology, GradedModule, KoszulClass,
    KoszulGroup, SymBasis, WedgeBasis,
};
use syz_linalg::{binomial, poly, Field, Matrix};
use syz_pencil::{member_is_general, Pencil};

use crate::error::SyzygyError;
use crate::quadric::{check_linear, sym2_product, to_quadric_rep};
use crate::rank::{syzygy_rank, RankCertificate};

/// A class built from a subspace W (rows in V coordinates) and the images φw_j
/// (rows in M_1 coordinates).
#[derive(Clone, Debug)]
pub struct PencilClass<F: Field> {
    pub class: KoszulClass<F>,
    pub w: Matrix<F>,
    pub phi_w: Matrix<F>,
    pub rank: RankCertificate<F>,
    /// dim K_{p,1}(M; W); one for pencils whose residual series is base-point free.
    pub restricted_dim: usize,
}

impl<F: Field> PencilClass<F> {
    pub fn p(&self) -> usize {
        self.class.pos.p
    }
}

/// The cycle Σ_j (−1)^j ∧_{i≠j} w_i ⊗ φw_j for dim W = p+1, with its checks:
/// cycle, nonzero in the restricted group and in K_{p,1}, rank p+1.
pub fn pencil_class<F: Field>(
    m: &GradedModule<F>,
    w: &Matrix<F>,
    phi_w: &Matrix<F>,
) -> Result<PencilClass<F>, SyzygyError> {
    if w.rows() < 2 {
        return Err(SyzygyError::Invariant(format!(
            "need p+1 ≥ 2 independent sections, got {}",
            w.rows()
        )));
    }
    let ambient = koszul_cohomology(m, w.rows() - 1, 1)?;
    pencil_class_in(m, &ambient, w, phi_w)
}

/// As [`pencil_class`], with K_{p,1}(M, V) already computed.
pub fn pencil_class_in<F: Field>(
    m: &GradedModule<F>,
    ambient: &KoszulGroup<F>,
    w: &Matrix<F>,
    phi_w: &Matrix<F>,
) -> Result<PencilClass<F>, SyzygyError> {
    check_linear(m)?;
    let f = m.field();
    let k = w.rows();
    if k < 2 || phi_w.rows() != k || w.rank() != k {
        return Err(SyzygyError::Invariant(format!(
            "need p+1 ≥ 2 independent sections, got {k}"
        )));
    }
    let p = k - 1;
    let dm = m.piece_dim(1);
    let basis = WedgeBasis::new(k, p);
    let mut x = vec![f.zero(); basis.len() * dm];
    for j in 0..k {
        let tuple: Vec<usize> = (0..k).filter(|&i| i != j).collect();
        let t = basis.index_of(&tuple);
        // j is zero-based, the sign uses j+1
        let sign_negative = j % 2 == 0;
        for (e, c) in phi_w.row(j).iter().enumerate() {
            x[t * dm + e] = if sign_negative { f.neg(c) } else { c.clone() };
        }
    }
    let restricted = restricted_cohomology(m, w, p, 1)?;
    let rc = restricted.class_coords(&x)?;
    if rc.iter().all(|c| f.is_zero(c)) {
        return Err(SyzygyError::ZeroClass);
    }
    let z = restricted_chain_map(w, p, dm, &x);
    if apply_differential(m, p, 1, &z)?.iter().any(|c| !f.is_zero(c)) {
        return Err(SyzygyError::Invariant("pencil class is not a cycle".into()));
    }
    if ambient.pos.p != p || ambient.pos.q != 1 {
        return Err(SyzygyError::Invariant(format!(
            "ambient group at {:?}, class at p = {p}",
            ambient.pos
        )));
    }
    if ambient.is_boundary(&z)? {
        return Err(SyzygyError::ZeroClass);
    }
    let class = KoszulClass::native(p, 1, z);
    let rank = syzygy_rank(m, &class)?;
    if rank.rank != p + 1 {
        return Err(SyzygyError::Invariant(format!(
            "pencil class has rank {}, expected {}",
            rank.rank,
            p + 1
        )));
    }
    Ok(PencilClass {
        class,
        w: w.clone(),
        phi_w: phi_w.clone(),
        rank,
        restricted_dim: restricted.dim(),
    })
}

/// W_s and φ·W_s for the member a·u + b·v of a pencil on a canonical curve:
/// rows of the first matrix are in V coordinates, of the second in M_1 coordinates.
pub fn residual_sections<F: Field>(
    ring: &CanonicalRing<F>,
    denominator: &[F::Elem],
    pcl: &Pencil<F>,
    member: (&F::Elem, &F::Elem),
) -> Result<(Matrix<F>, Matrix<F>), SyzygyError> {
    let f = ring.field();
    let g = ring.genus();
    let s = pcl.member(f, member.0, member.1)?;
    if !member_is_general(f, pcl, &s, denominator) {
        return Err(SyzygyError::DegenerateDivisor);
    }
    let t = pcl.complement(f, member.0, member.1);
    let inf = pcl.infinity_multiplicity(f, &s);
    let top = 2 * g - 2;
    // conditions: remainder mod s vanishes and the top `inf` coefficients vanish
    let b1 = ring.piece_basis(1);
    let ds = poly::degree(f, &s).unwrap_or(0);
    let conds = Matrix::from_fn(f.clone(), ds + inf, g, |r, a| {
        let h = b1.row(a);
        if r < ds {
            let (_, rem) = poly::divrem(f, h, &s);
            rem.get(r).cloned().unwrap_or_else(|| f.zero())
        } else {
            h[top - (r - ds)].clone()
        }
    });
    let w = Matrix::from_rows(f.clone(), g, conds.kernel());
    let expected = g + 1 - pcl.degree;
    if w.rows() != expected {
        return Err(SyzygyError::WrongResidualDimension {
            found: w.rows(),
            expected,
        });
    }
    let mut phi = Matrix::zeros(f.clone(), 0, ring.module().piece_dim(1));
    for c in w.row_vecs() {
        let n = ring.numerator(1, &c);
        let (quo, rem) = poly::divrem(f, &n, &s);
        if !poly::trim(f, rem).is_empty() {
            return Err(SyzygyError::Invariant(
                "section does not vanish on the member divisor".into(),
            ));
        }
        let image = poly::mul(f, &t, &quo);
        let coords = ring
            .coords(1, &image)
            .ok_or_else(|| SyzygyError::Invariant("φ·w is not a regular canonical form".into()))?;
        phi.push_row(&coords);
    }
    Ok((w, phi))
}

/// δ_s for the member a·u + b·v of `pcl` on the canonical ring.
pub fn min_rank_syzygy<F: Field>(
    ring: &CanonicalRing<F>,
    denominator: &[F::Elem],
    pcl: &Pencil<F>,
    member: (&F::Elem, &F::Elem),
) -> Result<PencilClass<F>, SyzygyError> {
    let (w, phi) = residual_sections(ring, denominator, pcl, member)?;
    pencil_class(ring.module(), &w, &phi)
}

/// Span of the minors w_i·φw_j − w_j·φw_i in Sym²V, asserted to lie in I_2.
/// Rows in monomial coordinates; `w` in V coordinates and `phi_w` in M_1 = V coordinates.
pub fn scroll_quadrics<F: Field>(
    m: &GradedModule<F>,
    w: &Matrix<F>,
    phi_w: &Matrix<F>,
) -> Result<Matrix<F>, SyzygyError> {
    check_linear(m)?;
    let f = m.field();
    let n = m.dim_v();
    let k = w.rows();
    let mut rows = Matrix::zeros(f.clone(), 0, SymBasis::new(n, 2).len());
    for i in 0..k {
        for j in (i + 1)..k {
            let a = sym2_product(f, w.row(i), phi_w.row(j));
            let b = sym2_product(f, w.row(j), phi_w.row(i));
            let q: Vec<F::Elem> = a.iter().zip(&b).map(|(x, y)| f.sub(x, y)).collect();
            rows.push_row(&q);
        }
    }
    let to_m2 = m.symmetric_map(2)?;
    for q in rows.row_vecs() {
        if to_m2.vec_mul(&q).iter().any(|c| !f.is_zero(c)) {
            return Err(SyzygyError::Invariant(
                "scroll minor is not a quadric through the curve".into(),
            ));
        }
    }
    let span = rows.rowspace();
    if span.rows() != binomial(k, 2) {
        return Err(SyzygyError::Invariant(format!(
            "scroll minors span {} dimensions, expected {}",
            span.rows(),
            binomial(k, 2)
        )));
    }
    Ok(span)
}

/// Scroll quadrics of a pencil, computed from one general member.
pub fn scroll_quadrics_of_pencil<F: Field>(
    ring: &CanonicalRing<F>,
    denominator: &[F::Elem],
    pcl: &Pencil<F>,
) -> Result<Matrix<F>, SyzygyError> {
    let f = ring.field();
    for b in 0..f.order().min(64) as u64 {
        let (one, bb) = (f.one(), f.element(b));
        match residual_sections(ring, denominator, pcl, (&one, &bb)) {
            Ok((w, phi)) => return scroll_quadrics(ring.module(), &w, &phi),
            Err(SyzygyError::DegenerateDivisor) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(SyzygyError::DegenerateDivisor)
}

/// Whether every Sym² slice of the class's quadric form lies in `span`.
pub fn quadric_support_within<F: Field>(
    m: &GradedModule<F>,
    class: &KoszulClass<F>,
    span: &Matrix<F>,
) -> Result<bool, SyzygyError> {
    let rep = to_quadric_rep(m, class)?;
    let e = span.rref();
    Ok((0..binomial(rep.n, rep.p - 1)).all(|t| e.contains(rep.slice(t))))
}
