//! Finitely generated graded modules over Sym(V), truncated at degree `qmax`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syz_linalg::{Field, Matrix, SubspaceSolver, Tensor3};

use crate::error::KoszulError;
use crate::symmetric::SymBasis;

/// Multidegrees of the basis of V and of every piece M_q. The action must be
/// homogeneous: deg(v_a · m) = deg(v_a) + deg(m).
#[derive(Clone, Debug, PartialEq)]
pub struct Weights {
    pub v: Vec<Vec<i32>>,
    pub pieces: Vec<Vec<Vec<i32>>>,
}

type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

/// Pieces M_0 … M_qmax with tensors mult[q] : V × M_q → M_{q+1}.
#[derive(Clone, Debug)]
pub struct GradedModule<F: Field> {
    field: F,
    dim_v: usize,
    piece_dims: Vec<usize>,
    mult: Vec<Tensor3<F>>,
    weights: Option<Weights>,
    // sparse[q][a][m] lists the nonzero coordinates of v_a · m
    sparse: Vec<Vec<Vec<SparseVec<F>>>>,
}

impl<F: Field> GradedModule<F> {
    pub fn new(
        field: F,
        dim_v: usize,
        piece_dims: Vec<usize>,
        mult: Vec<Tensor3<F>>,
        weights: Option<Weights>,
    ) -> Result<Self, KoszulError> {
        if piece_dims.is_empty() || mult.len() + 1 != piece_dims.len() {
            return Err(KoszulError::Shape(format!(
                "{} pieces need {} multiplication tensors, got {}",
                piece_dims.len(),
                piece_dims.len().saturating_sub(1),
                mult.len()
            )));
        }
        for (q, t) in mult.iter().enumerate() {
            if t.dims() != (dim_v, piece_dims[q], piece_dims[q + 1]) {
                return Err(KoszulError::Shape(format!(
                    "mult[{q}] has shape {:?}, expected {:?}",
                    t.dims(),
                    (dim_v, piece_dims[q], piece_dims[q + 1])
                )));
            }
        }
        let sparse = mult
            .iter()
            .map(|t| {
                (0..dim_v)
                    .map(|a| {
                        (0..t.dims().1)
                            .map(|m| {
                                t.fiber(a, m)
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, c)| !field.is_zero(c))
                                    .map(|(n, c)| (n, c.clone()))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let module = Self {
            field,
            dim_v,
            piece_dims,
            mult,
            weights,
            sparse,
        };
        module.check_weights()?;
        module.check_commutativity(200)?;
        Ok(module)
    }

    fn check_weights(&self) -> Result<(), KoszulError> {
        let Some(w) = &self.weights else { return Ok(()) };
        if w.v.len() != self.dim_v || w.pieces.len() != self.piece_dims.len() {
            return Err(KoszulError::Weights("weight table shape".into()));
        }
        for (q, dims) in self.piece_dims.iter().enumerate() {
            if w.pieces[q].len() != *dims {
                return Err(KoszulError::Weights(format!("piece {q} weight count")));
            }
        }
        for q in 0..self.mult.len() {
            for a in 0..self.dim_v {
                for m in 0..self.piece_dims[q] {
                    for (n, _) in &self.sparse[q][a][m] {
                        let sum: Vec<i32> = w.v[a].iter().zip(&w.pieces[q][m]).map(|(x, y)| x + y).collect();
                        if sum != w.pieces[q + 1][*n] {
                            return Err(KoszulError::Weights(format!("action not homogeneous at q={q}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks v·(w·m) = w·(v·m) on `samples` random basis triples.
    fn check_commutativity(&self, samples: usize) -> Result<(), KoszulError> {
        if self.dim_v < 2 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for q in 0..self.mult.len().saturating_sub(1) {
            if self.piece_dims[q] == 0 {
                continue;
            }
            for _ in 0..samples {
                let a = rng.gen_range(0..self.dim_v);
                let b = rng.gen_range(0..self.dim_v);
                let m = rng.gen_range(0..self.piece_dims[q]);
                let mut e = vec![self.field.zero(); self.piece_dims[q]];
                e[m] = self.field.one();
                let ab = self.act_basis(q + 1, a, &self.act_basis(q, b, &e));
                let ba = self.act_basis(q + 1, b, &self.act_basis(q, a, &e));
                if ab != ba {
                    return Err(KoszulError::NotCommutative { q });
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }
    pub fn qmax(&self) -> usize {
        self.piece_dims.len() - 1
    }
    pub fn piece_dims(&self) -> &[usize] {
        &self.piece_dims
    }
    pub fn piece_dim(&self, q: usize) -> usize {
        self.piece_dims.get(q).copied().unwrap_or(0)
    }
    pub fn mult(&self, q: usize) -> Option<&Tensor3<F>> {
        self.mult.get(q)
    }
    pub fn weights(&self) -> Option<&Weights> {
        self.weights.as_ref()
    }

    /// Nonzero coordinates of v_a · e_m for e_m a basis vector of M_q.
    pub fn action(&self, q: usize, a: usize, m: usize) -> &[(usize, F::Elem)] {
        &self.sparse[q][a][m]
    }

    /// v_a · x for x ∈ M_q.
    pub fn act_basis(&self, q: usize, a: usize, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.piece_dim(q + 1)];
        for (m, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (n, e) in &self.sparse[q][a][m] {
                out[*n] = f.add(&out[*n], &f.mul(c, e));
            }
        }
        out
    }

    /// v · x for v ∈ V (coordinates) and x ∈ M_q.
    pub fn act(&self, q: usize, v: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.piece_dim(q + 1)];
        for (a, va) in v.iter().enumerate() {
            if !f.is_zero(va) {
                let part = self.act_basis(q, a, x);
                f.axpy(&mut out, va, &part);
            }
        }
        out
    }

    /// Matrix of Sym^q V → M_q, m ↦ m · 1 (rows indexed by monomials). Needs dim M_0 = 1.
    pub fn symmetric_map(&self, q: usize) -> Result<Matrix<F>, KoszulError> {
        if q > self.qmax() {
            return Err(KoszulError::DegreeOutOfRange { q });
        }
        if self.piece_dim(0) != 1 {
            return Err(KoszulError::Shape(
                "symmetric map needs a cyclic module with dim M_0 = 1".into(),
            ));
        }
        let basis = SymBasis::new(self.dim_v, q);
        let f = &self.field;
        let rows = basis
            .monomials
            .iter()
            .map(|mono| {
                let mut x = vec![f.one()];
                for (deg, &a) in mono.iter().rev().enumerate() {
                    x = self.act_basis(deg, a, &x);
                }
                x
            })
            .collect();
        Ok(Matrix::from_rows(f.clone(), self.piece_dim(q), rows))
    }

    /// Whether M is generated by M_0 in every degree up to qmax.
    pub fn check_generated_in_degree_zero(&self) -> Result<(), KoszulError> {
        let f = &self.field;
        let mut span = Matrix::identity(f.clone(), self.piece_dim(0));
        for q in 0..self.qmax() {
            let mut next = Matrix::zeros(f.clone(), 0, self.piece_dim(q + 1));
            for i in 0..span.rows() {
                for a in 0..self.dim_v {
                    next.push_row(&self.act_basis(q, a, span.row(i)));
                }
            }
            span = next.rowspace();
            if span.rows() != self.piece_dim(q + 1) {
                return Err(KoszulError::NotNormallyGenerated { q: q + 1 });
            }
        }
        Ok(())
    }

    fn action_on_sub(&self, subs: &[Matrix<F>]) -> Result<Vec<Tensor3<F>>, KoszulError> {
        let solvers: Vec<SubspaceSolver<F>> = subs.iter().map(SubspaceSolver::new).collect();
        let mut mult = Vec::new();
        for q in 0..self.qmax() {
            let mut t = Tensor3::zeros(self.field.clone(), (self.dim_v, subs[q].rows(), subs[q + 1].rows()));
            for a in 0..self.dim_v {
                for i in 0..subs[q].rows() {
                    let img = self.act_basis(q, a, subs[q].row(i));
                    let c = solvers[q + 1].coords(&img).ok_or(KoszulError::ClosureViolation { q })?;
                    for (j, x) in c.into_iter().enumerate() {
                        t.set(a, i, j, x);
                    }
                }
            }
            mult.push(t);
        }
        Ok(mult)
    }

    fn check_sub_shapes(&self, subs: &[Matrix<F>]) -> Result<(), KoszulError> {
        if subs.len() != self.piece_dims.len() {
            return Err(KoszulError::Shape(format!(
                "{} sub pieces for {} module pieces",
                subs.len(),
                self.piece_dims.len()
            )));
        }
        for (q, s) in subs.iter().enumerate() {
            if s.cols() != self.piece_dim(q) || s.rank() != s.rows() {
                return Err(KoszulError::Shape(format!(
                    "sub piece {q} must have independent rows of length {}",
                    self.piece_dim(q)
                )));
            }
        }
        Ok(())
    }

    /// The submodule spanned by the given rows in each degree, in the given bases.
    pub fn submodule(&self, subs: &[Matrix<F>]) -> Result<Self, KoszulError> {
        self.check_sub_shapes(subs)?;
        let mult = self.action_on_sub(subs)?;
        let dims = subs.iter().map(|s| s.rows()).collect();
        Self::new(self.field.clone(), self.dim_v, dims, mult, None)
    }

    /// M / N for a submodule N given by rows; the quotient basis is the set of
    /// non-pivot coordinates of N's echelon form in each degree.
    pub fn quotient(&self, subs: &[Matrix<F>]) -> Result<Self, KoszulError> {
        self.check_sub_shapes(subs)?;
        self.action_on_sub(subs)?;
        let echelons: Vec<_> = subs.iter().map(|s| s.rref()).collect();
        let complements: Vec<Vec<usize>> = echelons
            .iter()
            .enumerate()
            .map(|(q, e)| (0..self.piece_dim(q)).filter(|c| !e.pivots.contains(c)).collect())
            .collect();
        let f = &self.field;
        let mut mult = Vec::new();
        for q in 0..self.qmax() {
            let mut t = Tensor3::zeros(f.clone(), (self.dim_v, complements[q].len(), complements[q + 1].len()));
            for a in 0..self.dim_v {
                for (i, &m) in complements[q].iter().enumerate() {
                    let mut e = vec![f.zero(); self.piece_dim(q)];
                    e[m] = f.one();
                    let img = echelons[q + 1].reduce(&self.act_basis(q, a, &e));
                    for (j, &n) in complements[q + 1].iter().enumerate() {
                        t.set(a, i, j, img[n].clone());
                    }
                }
            }
            mult.push(t);
        }
        let dims = complements.iter().map(|c| c.len()).collect();
        Self::new(f.clone(), self.dim_v, dims, mult, None)
    }

    /// The same module with coefficients pushed through a field embedding.
    pub fn change_field<G: Field>(&self, g: &G, embed: impl Fn(&F::Elem) -> G::Elem) -> GradedModule<G> {
        let mult = self
            .mult
            .iter()
            .map(|t| Tensor3::from_fn(g.clone(), t.dims(), |i, j, k| embed(t.get(i, j, k))))
            .collect();
        GradedModule::new(
            g.clone(),
            self.dim_v,
            self.piece_dims.clone(),
            mult,
            self.weights.clone(),
        )
        .expect("field change preserves module axioms")
    }

    /// Same pieces, with V replaced by the span of the rows of `w` (in V coordinates).
    pub fn restrict(&self, w: &Matrix<F>) -> Result<Self, KoszulError> {
        if w.cols() != self.dim_v {
            return Err(KoszulError::Shape(format!(
                "subspace rows have length {}, dim V = {}",
                w.cols(),
                self.dim_v
            )));
        }
        let f = &self.field;
        let k = w.rows();
        let mult = self
            .mult
            .iter()
            .map(|t| {
                let (_, b, c) = t.dims();
                let mut out = Tensor3::zeros(f.clone(), (k, b, c));
                for i in 0..k {
                    for a in 0..self.dim_v {
                        let coef = w.get(i, a);
                        if f.is_zero(coef) {
                            continue;
                        }
                        for m in 0..b {
                            for n in 0..c {
                                let x = t.get(a, m, n);
                                if !f.is_zero(x) {
                                    out.add_to(i, m, n, &f.mul(coef, x));
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Self::new(f.clone(), k, self.piece_dims.clone(), mult, None)
    }
}
