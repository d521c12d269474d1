//! Syzygy rank: the dimension of the smallest W ⊆ V carrying a class.

use serde::Serialize;
use syz_koszul::{GradedModule, KoszulClass, SymBasis};
use syz_linalg::{Field, Matrix};

use crate::error::SyzygyError;
use crate::quadric::{linear_strand, to_quadric_rep, QuadricRep};

#[derive(Clone, Debug)]
pub struct RankCertificate<F: Field> {
    pub p: usize,
    /// Rank over the algebraic closure.
    pub rank: usize,
    /// Rank over the field of definition (differs from `rank` only for p = 1).
    pub rational_rank: usize,
    /// A minimal W over the field of definition, rows in V coordinates.
    pub subspace: Matrix<F>,
    pub flattening_hash: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankSummary {
    pub p: usize,
    pub rank: usize,
    pub rational_rank: usize,
    pub flattening_hash: String,
}

impl<F: Field> RankCertificate<F> {
    pub fn summary(&self) -> RankSummary {
        RankSummary {
            p: self.p,
            rank: self.rank,
            rational_rank: self.rational_rank,
            flattening_hash: format!("{:016x}", self.flattening_hash),
        }
    }
}

/// FNV-1a over the prime-field components of a matrix.
fn matrix_hash<F: Field>(m: &Matrix<F>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(m.rows() as u64);
    eat(m.cols() as u64);
    for x in m.data() {
        for c in m.field().prime_components(x) {
            eat(c as u64);
        }
    }
    h
}

/// Rank of a nonzero K_{p,1} class.
pub fn syzygy_rank<F: Field>(m: &GradedModule<F>, cls: &KoszulClass<F>) -> Result<RankCertificate<F>, SyzygyError> {
    let rep = to_quadric_rep(m, cls)?;
    rank_of_quadric_rep(m.field(), &rep)
}

pub fn rank_of_quadric_rep<F: Field>(f: &F, rep: &QuadricRep<F>) -> Result<RankCertificate<F>, SyzygyError> {
    if rep.is_zero(f) {
        return Err(SyzygyError::ZeroClass);
    }
    if rep.p >= 2 {
        let t = linear_strand(rep, f)?;
        let flat = t.flatten_middle();
        let subspace = flat.rowspace();
        let rank = subspace.rows();
        return Ok(RankCertificate {
            p: rep.p,
            rank,
            rational_rank: rank,
            subspace,
            flattening_hash: matrix_hash(&flat),
        });
    }
    let b = gram_matrix(f, rep.n, &rep.coeffs);
    let s = b.rank();
    let iso = max_isotropic(&b);
    let subspace = Matrix::from_rows(f.clone(), rep.n, iso.kernel());
    let rational_rank = subspace.rows();
    debug_assert_eq!(rational_rank, s - (iso.rows() - (rep.n - s)));
    Ok(RankCertificate {
        p: 1,
        rank: s.div_ceil(2),
        rational_rank,
        subspace,
        flattening_hash: matrix_hash(&b),
    })
}

/// Symmetric matrix B with q(x) = x B xᵀ for q ∈ Sym²V (odd characteristic).
pub fn gram_matrix<F: Field>(f: &F, n: usize, q: &[F::Elem]) -> Matrix<F> {
    let basis = SymBasis::new(n, 2);
    let half = f.inv(&f.from_prime(2)).expect("odd characteristic");
    let mut b = Matrix::zeros(f.clone(), n, n);
    for (i, mono) in basis.monomials.iter().enumerate() {
        let (r, s) = (mono[0], mono[1]);
        if r == s {
            b.set(r, r, q[i].clone());
        } else {
            let c = f.mul(&q[i], &half);
            b.set(r, s, c.clone());
            b.set(s, r, c);
        }
    }
    b
}

fn bilinear<F: Field>(b: &Matrix<F>, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    b.field().dot(&b.mul_vec(y), x)
}

/// A nonzero isotropic vector in the span of `u` (rows, nondegenerate part of dimension ≥ 2), if any.
fn isotropic_vector<F: Field>(b: &Matrix<F>, u: &Matrix<F>) -> Option<Vec<F::Elem>> {
    let f = b.field();
    // orthogonal basis of span(u)
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    let mut diag: Vec<F::Elem> = Vec::new();
    let mut pool: Vec<Vec<F::Elem>> = u.row_vecs();
    while let Some(mut x) = pool.pop() {
        for (e, a) in basis.iter().zip(&diag) {
            let c = f.div(&bilinear(b, e, &x), a).unwrap();
            f.axpy(&mut x, &f.neg(&c), e);
        }
        if x.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        let q = bilinear(b, &x, &x);
        if f.is_zero(&q) {
            return Some(x);
        }
        basis.push(x);
        diag.push(q);
    }
    let k = basis.len();
    if k < 2 {
        return None;
    }
    let combine = |c0: &F::Elem, c1: &F::Elem, c2: Option<&F::Elem>| -> Vec<F::Elem> {
        let mut x: Vec<F::Elem> = basis[0].iter().map(|e| f.mul(e, c0)).collect();
        f.axpy(&mut x, c1, &basis[1]);
        if let Some(c2) = c2 {
            f.axpy(&mut x, c2, &basis[2]);
        }
        x
    };
    // a0 s² + a1 = 0
    if let Some(s) = f.sqrt(&f.neg(&f.div(&diag[1], &diag[0]).unwrap())) {
        return Some(combine(&s, &f.one(), None));
    }
    if k < 3 {
        return None;
    }
    // a0 y0² + a1 y1² = −a2: walk y0 through the field until the remainder is a square
    for i in 0..f.order().min(1 << 20) as u64 {
        let y0 = f.element(i);
        let rhs = f.sub(&f.neg(&diag[2]), &f.mul(&diag[0], &f.mul(&y0, &y0)));
        if let Some(y1) = f.sqrt(&f.div(&rhs, &diag[1]).unwrap()) {
            return Some(combine(&y0, &y1, Some(&f.one())));
        }
    }
    None
}

/// Basis of a maximal totally isotropic subspace of the form B (radical included).
pub fn max_isotropic<F: Field>(b: &Matrix<F>) -> Matrix<F> {
    let f = b.field();
    let n = b.rows();
    let radical = b.kernel();
    let mut iso = Matrix::from_rows(f.clone(), n, radical.clone());
    // complement of the radical
    // standard vectors at the non-pivot columns of the radical span a complement
    let mut u = {
        let rad = iso.rref();
        let mut rows = Matrix::zeros(f.clone(), 0, n);
        for i in (0..n).filter(|c| !rad.pivots.contains(c)) {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            rows.push_row(&e);
        }
        rows
    };
    while u.rows() >= 2 {
        let Some(x) = isotropic_vector(b, &u) else {
            break;
        };
        // hyperbolic partner y in span(u) with B(x, y) = 1
        let bx = b.mul_vec(&x);
        let Some(y) = u.row_vecs().into_iter().find(|r| !f.is_zero(&f.dot(&bx, r))) else {
            break;
        };
        let by = b.mul_vec(&y);
        // orthogonal complement of span{x, y} inside span(u)
        let cond = Matrix::from_fn(f.clone(), 2, u.rows(), |i, j| {
            let row = u.row(j);
            f.dot(if i == 0 { &bx } else { &by }, row)
        });
        let coeffs = cond.kernel();
        let next: Vec<Vec<F::Elem>> = coeffs.iter().map(|c| u.vec_mul(c)).collect();
        iso.push_row(&x);
        u = Matrix::from_rows(f.clone(), n, next);
    }
    iso
}
