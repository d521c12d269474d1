//! Koszul differentials and cohomology K_{p,q}(M, V).
//!
//! Basis of ∧^p V ⊗ M_q: pairs (T, m) with T a lexicographically ordered
//! wedge tuple, flattened as `index(T) * dim M_q + m`. The differential is
//! d(e_T ⊗ m) = Σ_j (−1)^j e_{T∖t_j} ⊗ (v_{t_j} · m), with j counted from 1.
//!
//! When the module carries weights the complex splits into weight blocks and
//! every computation runs blockwise.

use std::collections::BTreeMap;

use syz_linalg::{par_map, Echelon, Execution, Field, Matrix, SubspaceSolver};

use crate::error::KoszulError;
use crate::exterior::{wedge_power, WedgeBasis};
use crate::module::GradedModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KoszulPosition {
    pub p: usize,
    pub q: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repr {
    /// Coefficients over ∧^p V ⊗ M_q.
    Native,
    /// Coefficients over ∧^{p-1} V ⊗ I_2 (q = 1 only).
    Quadric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KoszulClass<F: Field> {
    pub pos: KoszulPosition,
    pub repr: Repr,
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> KoszulClass<F> {
    pub fn native(p: usize, q: usize, coeffs: Vec<F::Elem>) -> Self {
        Self {
            pos: KoszulPosition { p, q },
            repr: Repr::Native,
            coeffs,
        }
    }
}

/// dim ∧^p V ⊗ M_q.
pub fn chain_len<F: Field>(m: &GradedModule<F>, p: usize, q: usize) -> usize {
    syz_linalg::binomial(m.dim_v(), p) * m.piece_dim(q)
}

/// Sparse image of the basis vector e_T ⊗ e_m, T = wedge tuple number `t`.
fn d_basis<F: Field>(
    m: &GradedModule<F>,
    src: &WedgeBasis,
    dst: &WedgeBasis,
    q: usize,
    t: usize,
    e: usize,
) -> Vec<(usize, F::Elem)> {
    let f = m.field();
    let tuple = &src.tuples[t];
    let next = m.piece_dim(q + 1);
    let mut out = Vec::new();
    let mut rest = Vec::with_capacity(tuple.len().saturating_sub(1));
    for (j0, &a) in tuple.iter().enumerate() {
        rest.clear();
        rest.extend(tuple.iter().enumerate().filter(|&(i, _)| i != j0).map(|(_, &x)| x));
        let row = dst.index_of(&rest) * next;
        // j = j0 + 1, so the sign is negative for even j0
        let negate = j0 % 2 == 0;
        for (n, c) in m.action(q, a, e) {
            out.push((row + n, if negate { f.neg(c) } else { c.clone() }));
        }
    }
    out
}

/// d applied to a vector of ∧^p V ⊗ M_q.
pub fn apply_differential<F: Field>(
    m: &GradedModule<F>,
    p: usize,
    q: usize,
    x: &[F::Elem],
) -> Result<Vec<F::Elem>, KoszulError> {
    if q >= m.qmax() {
        return Err(KoszulError::DegreeOutOfRange { q });
    }
    let f = m.field();
    let dm = m.piece_dim(q);
    if x.len() != chain_len(m, p, q) {
        return Err(KoszulError::Shape(format!(
            "vector of length {} in a chain group of dim {}",
            x.len(),
            chain_len(m, p, q)
        )));
    }
    if p == 0 {
        return Ok(Vec::new());
    }
    let src = WedgeBasis::new(m.dim_v(), p);
    let dst = WedgeBasis::new(m.dim_v(), p - 1);
    let mut out = vec![f.zero(); chain_len(m, p - 1, q + 1)];
    for (i, c) in x.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        for (r, v) in d_basis(m, &src, &dst, q, i / dm, i % dm) {
            out[r] = f.add(&out[r], &f.mul(c, &v));
        }
    }
    Ok(out)
}

/// Dense matrix of d: ∧^p V ⊗ M_q → ∧^{p-1} V ⊗ M_{q+1} (rows: target, columns: source).
pub fn koszul_differential<F: Field>(m: &GradedModule<F>, p: usize, q: usize) -> Result<Matrix<F>, KoszulError> {
    if q >= m.qmax() {
        return Err(KoszulError::DegreeOutOfRange { q });
    }
    let f = m.field();
    let cols = chain_len(m, p, q);
    if p == 0 {
        return Ok(Matrix::zeros(f.clone(), 0, cols));
    }
    let rows = chain_len(m, p - 1, q + 1);
    let mut out = Matrix::zeros(f.clone(), rows, cols);
    let src = WedgeBasis::new(m.dim_v(), p);
    let dst = WedgeBasis::new(m.dim_v(), p - 1);
    let dm = m.piece_dim(q);
    for c in 0..cols {
        for (r, v) in d_basis(m, &src, &dst, q, c / dm, c % dm) {
            let s = f.add(out.get(r, c), &v);
            out.set(r, c, s);
        }
    }
    Ok(out)
}

/// Basis indices of ∧^p V ⊗ M_q grouped by total weight (one group if unweighted).
pub fn weight_blocks<F: Field>(m: &GradedModule<F>, p: usize, q: usize) -> BTreeMap<Vec<i32>, Vec<usize>> {
    let mut blocks: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
    let len = chain_len(m, p, q);
    match m.weights() {
        None => {
            if len > 0 {
                blocks.insert(Vec::new(), (0..len).collect());
            }
        }
        Some(w) => {
            let basis = WedgeBasis::new(m.dim_v(), p);
            let dm = m.piece_dim(q);
            let rank = w.v.first().map_or(0, Vec::len);
            for (t, tuple) in basis.tuples.iter().enumerate() {
                let mut wt = vec![0i32; rank];
                for &a in tuple {
                    for (x, y) in wt.iter_mut().zip(&w.v[a]) {
                        *x += y;
                    }
                }
                for e in 0..dm {
                    let key: Vec<i32> = wt.iter().zip(&w.pieces[q][e]).map(|(x, y)| x + y).collect();
                    blocks.entry(key).or_default().push(t * dm + e);
                }
            }
        }
    }
    blocks
}

/// One weight block of a cohomology group.
#[derive(Clone, Debug)]
pub struct Block<F: Field> {
    pub weight: Vec<i32>,
    /// Global indices in ∧^p V ⊗ M_q covered by this block.
    pub cols: Vec<usize>,
    /// Independent cycles lifting a basis of the block's cohomology (block coordinates).
    pub reps: Vec<Vec<F::Elem>>,
    pub cycle_dim: usize,
    pub boundary: Echelon<F>,
    solver: SubspaceSolver<F>,
}

/// K_{p,q}(M, V) with explicit cycle representatives.
#[derive(Clone, Debug)]
pub struct KoszulGroup<F: Field> {
    pub field: F,
    pub pos: KoszulPosition,
    pub chain_len: usize,
    pub blocks: Vec<Block<F>>,
    // global index -> (block, position in block)
    locate: Vec<(usize, usize)>,
}

fn block_images<F: Field>(
    m: &GradedModule<F>,
    p: usize,
    q: usize,
    sources: &[usize],
    target_pos: &[usize],
    target_len: usize,
) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    if p == 0 {
        return vec![Vec::new(); sources.len()];
    }
    let src = WedgeBasis::new(m.dim_v(), p);
    let dst = WedgeBasis::new(m.dim_v(), p - 1);
    let dm = m.piece_dim(q);
    sources
        .iter()
        .map(|&s| {
            let mut v = vec![f.zero(); target_len];
            for (r, c) in d_basis(m, &src, &dst, q, s / dm, s % dm) {
                let i = target_pos[r];
                debug_assert!(i != usize::MAX, "differential leaves its weight block");
                v[i] = f.add(&v[i], &c);
            }
            v
        })
        .collect()
}

/// Computes K_{p,q}(M, V) on the default execution policy.
pub fn koszul_cohomology<F: Field>(m: &GradedModule<F>, p: usize, q: usize) -> Result<KoszulGroup<F>, KoszulError> {
    koszul_cohomology_with(m, p, q, Execution::default())
}

pub fn koszul_cohomology_with<F: Field>(
    m: &GradedModule<F>,
    p: usize,
    q: usize,
    exec: Execution,
) -> Result<KoszulGroup<F>, KoszulError> {
    if q >= m.qmax() {
        return Err(KoszulError::DegreeOutOfRange { q });
    }
    let f = m.field().clone();
    let here = weight_blocks(m, p, q);
    let out_blocks = if p > 0 {
        weight_blocks(m, p - 1, q + 1)
    } else {
        BTreeMap::new()
    };
    let in_blocks = if q > 0 {
        weight_blocks(m, p + 1, q - 1)
    } else {
        BTreeMap::new()
    };
    let len = chain_len(m, p, q);
    let out_len = if p > 0 { chain_len(m, p - 1, q + 1) } else { 0 };

    let mut locate = vec![(usize::MAX, usize::MAX); len];
    let mut out_pos = vec![usize::MAX; out_len];
    let mut jobs = Vec::with_capacity(here.len());
    for (bi, (w, cols)) in here.iter().enumerate() {
        for (i, &c) in cols.iter().enumerate() {
            locate[c] = (bi, i);
        }
        if let Some(rows) = out_blocks.get(w) {
            for (i, &r) in rows.iter().enumerate() {
                out_pos[r] = i;
            }
        }
        jobs.push(w.clone());
    }
    let local: Vec<usize> = locate.iter().map(|&(_, i)| i).collect();

    let blocks = par_map(exec, &jobs, |w| {
        let cols = &here[w];
        let n_out = out_blocks.get(w).map_or(0, Vec::len);
        // cycles: kernel of the outgoing block map
        let images = block_images(m, p, q, cols, &out_pos, n_out);
        let d_out = Matrix::from_fn(f.clone(), n_out, cols.len(), |r, c| images[c][r].clone());
        let cycles = d_out.kernel();
        // boundaries: images of the incoming block
        let boundary = match in_blocks.get(w) {
            Some(src) if q > 0 => {
                let imgs = block_images(m, p + 1, q - 1, src, &local, cols.len());
                Matrix::from_rows(f.clone(), cols.len(), imgs).rref()
            }
            _ => Matrix::zeros(f.clone(), 0, cols.len()).rref(),
        };
        let reduced: Vec<Vec<F::Elem>> = cycles.iter().map(|z| boundary.reduce(z)).collect();
        let reps = Matrix::from_rows(f.clone(), cols.len(), reduced).rowspace();
        debug_assert_eq!(reps.rows() + boundary.rank(), cycles.len(), "boundaries are cycles");
        let solver = SubspaceSolver::new(&reps.vstack(&boundary.rows).expect("same width"));
        Block {
            weight: w.clone(),
            cols: cols.clone(),
            reps: reps.row_vecs(),
            cycle_dim: cycles.len(),
            boundary,
            solver,
        }
    });
    Ok(KoszulGroup {
        field: f,
        pos: KoszulPosition { p, q },
        chain_len: len,
        blocks,
        locate,
    })
}

impl<F: Field> KoszulGroup<F> {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.reps.len()).sum()
    }

    pub fn cycle_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.cycle_dim).sum()
    }

    pub fn boundary_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.boundary.rank()).sum()
    }

    fn globalize(&self, b: &Block<F>, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.chain_len];
        for (x, &c) in v.iter().zip(&b.cols) {
            out[c] = x.clone();
        }
        out
    }

    /// Cycle representatives of a basis, as vectors of ∧^p V ⊗ M_q.
    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.blocks
            .iter()
            .flat_map(|b| b.reps.iter().map(move |r| self.globalize(b, r)))
            .collect()
    }

    pub fn basis(&self) -> Vec<KoszulClass<F>> {
        self.basis_vectors()
            .into_iter()
            .map(|v| KoszulClass::native(self.pos.p, self.pos.q, v))
            .collect()
    }

    /// Basis of the boundary space, as vectors of ∧^p V ⊗ M_q.
    pub fn boundary_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.blocks
            .iter()
            .flat_map(|b| {
                b.boundary
                    .rows
                    .row_vecs()
                    .into_iter()
                    .map(move |r| self.globalize(b, &r))
            })
            .collect()
    }

    /// Coordinates of the class of a cycle z in the basis from `basis()`.
    pub fn class_coords(&self, z: &[F::Elem]) -> Result<Vec<F::Elem>, KoszulError> {
        if z.len() != self.chain_len {
            return Err(KoszulError::Shape(format!(
                "vector of length {} for chain group of dim {}",
                z.len(),
                self.chain_len
            )));
        }
        let f = &self.field;
        let mut parts: Vec<Vec<F::Elem>> = self.blocks.iter().map(|b| vec![f.zero(); b.cols.len()]).collect();
        for (i, x) in z.iter().enumerate() {
            if !f.is_zero(x) {
                let (b, j) = self.locate[i];
                parts[b][j] = x.clone();
            }
        }
        let mut out = Vec::with_capacity(self.dim());
        for (b, part) in self.blocks.iter().zip(parts) {
            if part.iter().all(|x| f.is_zero(x)) {
                out.extend(std::iter::repeat(f.zero()).take(b.reps.len()));
                continue;
            }
            let c = b.solver.coords(&part).ok_or(KoszulError::NotACycle)?;
            out.extend(c.into_iter().take(b.reps.len()));
        }
        Ok(out)
    }

    /// Whether the cycle z is a boundary.
    pub fn is_boundary(&self, z: &[F::Elem]) -> Result<bool, KoszulError> {
        Ok(self.class_coords(z)?.iter().all(|x| self.field.is_zero(x)))
    }
}

/// Lifts ∧^p W ⊗ M_q into ∧^p V ⊗ M_q for W given by rows in V coordinates.
pub fn restricted_chain_map<F: Field>(w: &Matrix<F>, p: usize, dim_mq: usize, x: &[F::Elem]) -> Vec<F::Elem> {
    let f = w.field();
    let wp = wedge_power(w, p);
    let mut out = vec![f.zero(); wp.cols() * dim_mq];
    for s in 0..wp.rows() {
        for e in 0..dim_mq {
            let c = &x[s * dim_mq + e];
            if f.is_zero(c) {
                continue;
            }
            for t in 0..wp.cols() {
                let minor = wp.get(s, t);
                if !f.is_zero(minor) {
                    let i = t * dim_mq + e;
                    out[i] = f.add(&out[i], &f.mul(c, minor));
                }
            }
        }
    }
    out
}

/// K_{p,q}(M; W) for W spanned by the rows of `w`.
pub fn restricted_cohomology<F: Field>(
    m: &GradedModule<F>,
    w: &Matrix<F>,
    p: usize,
    q: usize,
) -> Result<KoszulGroup<F>, KoszulError> {
    if w.rank() != w.rows() {
        return Err(KoszulError::Shape("subspace rows must be independent".into()));
    }
    koszul_cohomology(&m.restrict(w)?, p, q)
}

/// Matrix of K_{p,q}(M; W) → K_{p,q}(M, V): column i holds the ambient class
/// coordinates of the i-th restricted basis class.
pub fn restricted_inclusion<F: Field>(
    m: &GradedModule<F>,
    w: &Matrix<F>,
    p: usize,
    q: usize,
) -> Result<Matrix<F>, KoszulError> {
    m.check_generated_in_degree_zero()?;
    let restricted = restricted_cohomology(m, w, p, q)?;
    let ambient = koszul_cohomology(m, p, q)?;
    let cols: Vec<Vec<F::Elem>> = restricted
        .basis_vectors()
        .iter()
        .map(|z| ambient.class_coords(&restricted_chain_map(w, p, m.piece_dim(q), z)))
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_rows(m.field().clone(), ambient.dim(), cols).transpose())
}
