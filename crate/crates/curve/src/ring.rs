//! Canonical rings of nodal rational curves as graded Sym(V)-modules.
//!
//! M_q is the span of q-fold products of canonical numerators, stored as
//! coefficient vectors of length q(2g−2)+1 (numerators over D(t)^q).

use syz_koszul::{GradedModule, SymBasis};
use syz_linalg::{poly, Field, Matrix, PrimeField, SubspaceSolver, Tensor3};

use crate::error::CurveError;
use crate::nodal::NodalRationalCurve;

#[derive(Clone, Debug)]
pub struct CanonicalRing<F: Field> {
    genus: usize,
    bases: Vec<Matrix<F>>,
    solvers: Vec<SubspaceSolver<F>>,
    module: GradedModule<F>,
}

/// Coefficient length of degree-q numerators.
pub fn numerator_len(genus: usize, q: usize) -> usize {
    q * (2 * genus - 2) + 1
}

pub fn canonical_ring(c: &NodalRationalCurve, qmax: usize) -> Result<CanonicalRing<PrimeField>, CurveError> {
    CanonicalRing::from_canonical_basis(c.field(), c.genus(), c.canonical_basis(), qmax)
}

impl<F: Field> CanonicalRing<F> {
    /// Builds M_0 … M_qmax from a basis of H^0(ω) and asserts dim M_q = (2q−1)(g−1) for q ≥ 2.
    pub fn from_canonical_basis(f: &F, genus: usize, basis: &[Vec<F::Elem>], qmax: usize) -> Result<Self, CurveError> {
        let g = genus;
        let mut bases = vec![Matrix::from_rows(f.clone(), 1, vec![vec![f.one()]])];
        let mut rows1: Vec<Vec<F::Elem>> = basis.to_vec();
        for r in &mut rows1 {
            r.resize(numerator_len(g, 1), f.zero());
        }
        let b1 = Matrix::from_rows(f.clone(), numerator_len(g, 1), rows1);
        if b1.rank() != g {
            return Err(CurveError::CanonicalDimension {
                found: b1.rank(),
                expected: g,
            });
        }
        if qmax >= 1 {
            bases.push(b1);
        }
        for q in 2..=qmax {
            let len = numerator_len(g, q);
            let mut prods = Matrix::zeros(f.clone(), 0, len);
            for a in 0..g {
                for m in 0..bases[q - 1].rows() {
                    let mut pr = poly::mul(f, bases[1].row(a), bases[q - 1].row(m));
                    pr.resize(len, f.zero());
                    prods.push_row(&pr);
                }
            }
            let b = prods.rowspace();
            let expected = (2 * q - 1) * (g - 1);
            if g >= 2 && b.rows() != expected {
                return Err(CurveError::NotProjectivelyNormal {
                    q,
                    found: b.rows(),
                    expected,
                });
            }
            bases.push(b);
        }
        let solvers: Vec<SubspaceSolver<F>> = bases.iter().map(SubspaceSolver::new).collect();
        let mut mult = Vec::new();
        for q in 0..qmax {
            let (src, dst) = (&bases[q], &bases[q + 1]);
            let mut t = Tensor3::zeros(f.clone(), (g, src.rows(), dst.rows()));
            for a in 0..g {
                for m in 0..src.rows() {
                    let mut pr = poly::mul(f, bases[1].row(a), src.row(m));
                    pr.resize(dst.cols(), f.zero());
                    let c = solvers[q + 1].coords(&pr).expect("products lie in the next piece");
                    for (n, x) in c.into_iter().enumerate() {
                        t.set(a, m, n, x);
                    }
                }
            }
            mult.push(t);
        }
        let dims = bases.iter().map(Matrix::rows).collect();
        let module = GradedModule::new(f.clone(), g, dims, mult, None)?;
        Ok(Self {
            genus,
            bases,
            solvers,
            module,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn field(&self) -> &F {
        self.module.field()
    }
    pub fn module(&self) -> &GradedModule<F> {
        &self.module
    }
    pub fn qmax(&self) -> usize {
        self.module.qmax()
    }
    /// Basis numerators of M_q as rows.
    pub fn piece_basis(&self, q: usize) -> &Matrix<F> {
        &self.bases[q]
    }

    /// Coordinates in M_q of a numerator over D^q, or None if it is not in M_q.
    pub fn coords(&self, q: usize, numerator: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let len = numerator_len(self.genus, q);
        let f = self.field();
        let trimmed = poly::trim(f, numerator.to_vec());
        if trimmed.len() > len {
            return None;
        }
        let mut v = trimmed;
        v.resize(len, f.zero());
        self.solvers[q].coords(&v)
    }

    /// Numerator of the element of M_q with the given coordinates.
    pub fn numerator(&self, q: usize, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.bases[q].vec_mul(coords)
    }

    /// Degree-q pieces of Γ(−x−y, ω): elements of M_q whose numerators vanish at x and y,
    /// as rows in M_q coordinates.
    pub fn vanishing_pieces(&self, points: &[F::Elem]) -> Vec<Matrix<F>> {
        let f = self.field();
        self.bases
            .iter()
            .map(|b| {
                let ev = Matrix::from_fn(f.clone(), points.len(), b.rows(), |i, j| {
                    poly::eval(f, b.row(j), &points[i])
                });
                Matrix::from_rows(f.clone(), b.rows(), ev.kernel())
            })
            .collect()
    }

    /// The same ring over a larger field.
    pub fn change_field<G: Field>(&self, g: &G, embed: impl Fn(&F::Elem) -> G::Elem) -> CanonicalRing<G> {
        let lift = |m: &Matrix<F>| Matrix::from_fn(g.clone(), m.rows(), m.cols(), |i, j| embed(m.get(i, j)));
        let bases: Vec<Matrix<G>> = self.bases.iter().map(lift).collect();
        let solvers = bases.iter().map(SubspaceSolver::new).collect();
        let module = self.module.change_field(g, &embed);
        CanonicalRing {
            genus: self.genus,
            bases,
            solvers,
            module,
        }
    }
}

/// I_2 = ker(Sym²V → M_2) and I_3 = ker(Sym³V → M_3), as rows in monomial coordinates.
pub fn quadrics_cubics<F: Field>(ring: &GradedModule<F>) -> Result<(Matrix<F>, Matrix<F>), CurveError> {
    let f = ring.field();
    let n = ring.dim_v();
    let ideal = |q: usize| -> Result<Matrix<F>, CurveError> {
        let s = ring.symmetric_map(q)?;
        if s.rank() != ring.piece_dim(q) {
            return Err(CurveError::NotProjectivelyNormal {
                q,
                found: s.rank(),
                expected: ring.piece_dim(q),
            });
        }
        Ok(Matrix::from_rows(
            f.clone(),
            SymBasis::new(n, q).len(),
            s.transpose().kernel(),
        ))
    };
    Ok((ideal(2)?, ideal(3)?))
}

/// Γ(−x−y, ω) as per-degree subspaces of the canonical ring (rows in M_q coordinates).
pub fn twist_at(
    c: &NodalRationalCurve,
    ring: &CanonicalRing<PrimeField>,
    x: u32,
    y: u32,
) -> Result<Vec<Matrix<PrimeField>>, CurveError> {
    c.check_smooth(x)?;
    c.check_smooth(y)?;
    if x == y {
        return Err(CurveError::EqualPoints);
    }
    Ok(ring.vanishing_pieces(&[x, y]))
}

/// Builds a curve and its canonical ring, resampling while the ring fails
/// its dimension assertions. Returns the number of rejected draws.
pub fn build_canonical(
    spec: &crate::nodal::CurveSpec,
    qmax: usize,
    max_attempts: u64,
) -> Result<(NodalRationalCurve, CanonicalRing<PrimeField>, u64), CurveError> {
    for attempt in 0..max_attempts {
        let c = match crate::nodal::build_curve_attempt(spec, attempt) {
            Ok(c) => c,
            Err(CurveError::RetriesExhausted(_)) | Err(CurveError::CanonicalDimension { .. }) => continue,
            Err(e) => return Err(e),
        };
        match canonical_ring(&c, qmax) {
            Ok(r) => return Ok((c, r, attempt)),
            Err(CurveError::NotProjectivelyNormal { .. }) if spec.pairs.is_none() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(CurveError::RetriesExhausted(max_attempts as usize))
}
