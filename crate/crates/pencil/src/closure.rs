//! Counting W^1_{k+1} over the algebraic closure.
//!
//! A pencil span{u, v} ⊂ k[t]_{≤d} is a point of G(2, d+1); in Plücker
//! coordinates P_ab = u_a v_b − u_b v_a the node conditions are linear:
//! Σ_{a<b} P_ab (x^a y^b − x^b y^a) = 0. The pencils are the points of the
//! Grassmannian inside that linear space L. Their coordinate ring in a degree
//! t where the Hilbert function has stabilized is a space of functions on the
//! points, and the eigenvectors of multiplication by ℓ/h recover each point
//! over the extension field generated by its eigenvalue.

use rand::Rng;
use serde::Serialize;
use syz_curve::{attempt_rng, NodalRationalCurve};
use syz_koszul::{SymBasis, WedgeBasis};
use syz_linalg::{poly, ExtensionField, Field, Matrix, PrimeField};

use crate::error::PencilError;
use crate::pencil::{embedded_pairs, Pencil};

/// One Galois orbit of pencils: `size` conjugate points defined over GF(p^size).
#[derive(Clone, Debug)]
pub struct PencilOrbit {
    pub size: usize,
    /// Minimal polynomial of the eigenvalue ℓ/h on this orbit.
    pub minpoly: Vec<u32>,
    pub field: ExtensionField,
    /// One representative over `field`.
    pub pencil: Pencil<ExtensionField>,
}

impl PencilOrbit {
    /// The representative as a GF(p) pencil when the orbit is a single rational point.
    pub fn rational(&self) -> Option<Pencil<PrimeField>> {
        if self.size != 1 {
            return None;
        }
        let down = |p: &[Vec<u32>]| p.iter().map(|c| c[0]).collect::<Vec<u32>>();
        Some(Pencil {
            u: down(&self.pencil.u),
            v: down(&self.pencil.v),
            degree: self.pencil.degree,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClosureCount {
    pub degree: usize,
    /// dim L and the Hilbert function of the Plücker quadrics restricted to L, from t = 0.
    pub linear_span_dim: usize,
    pub hilbert: Vec<usize>,
    /// Number of points over the algebraic closure (sum of orbit sizes).
    pub count: usize,
    pub orbits: Vec<PencilOrbit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureSummary {
    pub degree: usize,
    pub linear_span_dim: usize,
    pub hilbert: Vec<usize>,
    pub count: usize,
    pub orbit_sizes: Vec<usize>,
    pub rational: usize,
}

impl ClosureCount {
    /// The orbits consisting of a single GF(p)-rational pencil.
    pub fn rational_pencils(&self) -> Vec<Pencil<PrimeField>> {
        let mut out: Vec<_> = self.orbits.iter().filter_map(PencilOrbit::rational).collect();
        out.sort_by(|a, b| a.v.len().cmp(&b.v.len()).then_with(|| a.v.cmp(&b.v)));
        out
    }

    pub fn summary(&self) -> ClosureSummary {
        ClosureSummary {
            degree: self.degree,
            linear_span_dim: self.linear_span_dim,
            hilbert: self.hilbert.clone(),
            count: self.count,
            orbit_sizes: self.orbits.iter().map(|o| o.size).collect(),
            rational: self.orbits.iter().filter(|o| o.size == 1).count(),
        }
    }
}

type Lin = Vec<u32>;

/// Basis of L ⊂ ∧²k^{d+1}: Plücker vectors satisfying every node condition.
fn linear_span(c: &NodalRationalCurve, d: usize) -> (WedgeBasis, Matrix<PrimeField>) {
    let f = c.field();
    let wb = WedgeBasis::new(d + 1, 2);
    let pairs = c.pairs();
    let cond = Matrix::from_fn(f.clone(), pairs.len(), wb.len(), |i, j| {
        let (x, y) = pairs[i];
        let (a, b) = (wb.tuples[j][0] as u128, wb.tuples[j][1] as u128);
        f.sub(
            &f.mul(&f.pow(&x, a), &f.pow(&y, b)),
            &f.mul(&f.pow(&x, b), &f.pow(&y, a)),
        )
    });
    let basis = Matrix::from_rows(f.clone(), wb.len(), cond.kernel());
    (wb, basis)
}

/// Plücker quadrics of G(2, n) restricted to L, in Sym²(L^*) coordinates.
fn restricted_quadrics(f: &PrimeField, wb: &WedgeBasis, l: &Matrix<PrimeField>) -> Matrix<PrimeField> {
    let nvars = l.rows();
    let sym2 = SymBasis::new(nvars, 2);
    let coord = |a: usize, b: usize| -> Lin { l.column(wb.index_of(&[a, b])) };
    let prod = |x: &Lin, y: &Lin| -> Vec<u32> {
        let mut out = vec![0u32; sym2.len()];
        for (r, xr) in x.iter().enumerate() {
            if *xr == 0 {
                continue;
            }
            for (s, ys) in y.iter().enumerate() {
                if *ys != 0 {
                    let i = sym2.product_index(&[r], &[s]);
                    out[i] = f.add(&out[i], &f.mul(xr, ys));
                }
            }
        }
        out
    };
    let mut rows = Vec::new();
    for t in syz_koszul::wedge_index(wb.n, 4) {
        let (i, j, k, m) = (t[0], t[1], t[2], t[3]);
        let a = prod(&coord(i, j), &coord(k, m));
        let b = prod(&coord(i, k), &coord(j, m));
        let c = prod(&coord(i, m), &coord(j, k));
        rows.push(poly_combo(f, &a, &b, &c));
    }
    Matrix::from_rows(f.clone(), sym2.len(), rows).rowspace()
}

fn poly_combo(f: &PrimeField, a: &[u32], b: &[u32], c: &[u32]) -> Vec<u32> {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| f.add(&f.sub(x, y), z))
        .collect()
}

/// Degree-t part of the ideal generated by `quadrics`, as an echelon form.
fn ideal_in_degree(
    f: &PrimeField,
    nvars: usize,
    quadrics: &Matrix<PrimeField>,
    t: usize,
) -> syz_linalg::Echelon<PrimeField> {
    let target = SymBasis::new(nvars, t);
    if t < 2 {
        return Matrix::zeros(f.clone(), 0, target.len()).rref();
    }
    let sym2 = SymBasis::new(nvars, 2);
    let shifts = SymBasis::new(nvars, t - 2);
    let mut rows = Matrix::zeros(f.clone(), 0, target.len());
    for qi in 0..quadrics.rows() {
        for mu in &shifts.monomials {
            let mut v = vec![0u32; target.len()];
            for (j, c) in quadrics.row(qi).iter().enumerate() {
                if *c != 0 {
                    let i = target.product_index(&sym2.monomials[j], mu);
                    v[i] = f.add(&v[i], c);
                }
            }
            rows.push_row(&v);
        }
    }
    rows.rref()
}

struct Quotient {
    basis: SymBasis,
    ideal: syz_linalg::Echelon<PrimeField>,
    complement: Vec<usize>,
}

impl Quotient {
    fn new(f: &PrimeField, nvars: usize, quadrics: &Matrix<PrimeField>, t: usize) -> Self {
        let basis = SymBasis::new(nvars, t);
        let ideal = ideal_in_degree(f, nvars, quadrics, t);
        let complement = (0..basis.len()).filter(|c| !ideal.pivots.contains(c)).collect();
        Self {
            basis,
            ideal,
            complement,
        }
    }

    fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Quotient coordinates of a vector of Sym^t.
    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let r = self.ideal.reduce(v);
        self.complement.iter().map(|&c| r[c]).collect()
    }
}

/// Multiplication by a linear form from Sym^t into Sym^{t+1}, applied to monomial m.
fn times_linear(f: &PrimeField, lin: &[u32], m: &[usize], next: &SymBasis) -> Vec<u32> {
    let mut v = vec![0u32; next.len()];
    for (r, c) in lin.iter().enumerate() {
        if *c != 0 {
            let i = next.product_index(&[r], m);
            v[i] = f.add(&v[i], c);
        }
    }
    v
}

/// Characteristic polynomial of a square matrix via a Krylov sequence; None if the
/// random start vector has a smaller minimal polynomial.
fn krylov_charpoly<R: Rng>(m: &Matrix<PrimeField>, rng: &mut R) -> Option<Vec<u32>> {
    let f = m.field();
    let n = m.rows();
    let mut seq = vec![(0..n).map(|_| f.random(rng)).collect::<Vec<u32>>()];
    for _ in 0..n {
        let next = m.mul_vec(seq.last().unwrap());
        seq.push(next);
    }
    // solve Σ_{i<n} c_i M^i x = M^n x
    let a = Matrix::from_fn(f.clone(), n, n, |r, c| seq[c][r]);
    let c = a.solve(&seq[n]).ok()?;
    if a.rank() < n {
        return None;
    }
    let mut chi: Vec<u32> = c.iter().map(|x| f.neg(x)).collect();
    chi.push(1);
    Some(chi)
}

const MAX_TRIES: u64 = 16;

/// Points of W^1_d(C) over the algebraic closure, grouped into Galois orbits.
pub fn closure_count(c: &NodalRationalCurve, d: usize, seed: u64) -> Result<ClosureCount, PencilError> {
    let f = c.field();
    let (wb, l) = linear_span(c, d);
    let nvars = l.rows();
    if nvars == 0 {
        return Ok(ClosureCount {
            degree: d,
            linear_span_dim: 0,
            hilbert: vec![],
            count: 0,
            orbits: vec![],
        });
    }
    let quadrics = restricted_quadrics(f, &wb, &l);
    let mut hilbert = Vec::new();
    let mut quotients: Vec<Quotient> = Vec::new();
    let mut t0 = None;
    for t in 0..=8 {
        let q = Quotient::new(f, nvars, &quadrics, t);
        hilbert.push(q.dim());
        quotients.push(q);
        if t >= 3 && hilbert[t] == hilbert[t - 1] {
            t0 = Some(t - 1);
            break;
        }
    }
    let t0 = t0.ok_or_else(|| PencilError::Closure(format!("Hilbert function {hilbert:?} does not stabilize")))?;
    let n = hilbert[t0];
    if n == 0 {
        return Ok(ClosureCount {
            degree: d,
            linear_span_dim: nvars,
            hilbert,
            count: 0,
            orbits: vec![],
        });
    }
    let (rt, rt1) = (&quotients[t0], &quotients[t0 + 1]);
    let mult = |lin: &[u32]| -> Matrix<PrimeField> {
        let rows = rt
            .complement
            .iter()
            .map(|&i| rt1.reduce(&times_linear(f, lin, &rt.basis.monomials[i], &rt1.basis)))
            .collect();
        Matrix::from_rows(f.clone(), n, rows)
    };
    let mut rng = attempt_rng(seed, 0xC105);
    for _ in 0..MAX_TRIES {
        let h: Vec<u32> = (0..nvars).map(|_| f.random(&mut rng)).collect();
        let ell: Vec<u32> = (0..nvars).map(|_| f.random(&mut rng)).collect();
        let Some(hinv) = mult(&h).inverse() else { continue };
        let m = mult(&ell).mul(&hinv).expect("square");
        let Some(chi) = (0..4).find_map(|_| krylov_charpoly(&m, &mut rng)) else {
            continue;
        };
        let Some(factors) = poly::factor_squarefree(f, &chi, &mut rng) else {
            continue;
        };
        // reductions of z_j · h^{t0−1} and h^{t0}: evaluate coordinates at an eigenvector
        let hpow = power_vector(f, &h, t0 - 1, nvars);
        let probes: Vec<Vec<u32>> = (0..nvars)
            .map(|j| {
                let mut e = vec![0u32; nvars];
                e[j] = 1;
                rt.reduce(&mul_sym(f, &hpow, t0 - 1, &e, nvars))
            })
            .collect();
        let mut orbits = Vec::new();
        for phi in factors {
            orbits.push(orbit_from_factor(c, d, &wb, &l, &m, &probes, &phi)?);
        }
        return Ok(ClosureCount {
            degree: d,
            linear_span_dim: nvars,
            hilbert,
            count: n,
            orbits,
        });
    }
    Err(PencilError::Closure(format!(
        "no separating linear form found (Hilbert function {hilbert:?}); W^1_d is not reduced"
    )))
}

/// h^k as a vector of Sym^k.
fn power_vector(f: &PrimeField, h: &[u32], k: usize, nvars: usize) -> Vec<u32> {
    let mut acc = vec![1u32];
    for deg in 0..k {
        acc = mul_sym(f, &acc, deg, h, nvars);
    }
    acc
}

/// Product of a Sym^a vector with a linear form.
fn mul_sym(f: &PrimeField, x: &[u32], a: usize, lin: &[u32], nvars: usize) -> Vec<u32> {
    let src = SymBasis::new(nvars, a);
    let dst = SymBasis::new(nvars, a + 1);
    let mut out = vec![0u32; dst.len()];
    for (i, c) in x.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        for (j, v) in times_linear(f, lin, &src.monomials[i], &dst).into_iter().enumerate() {
            if v != 0 {
                out[j] = f.add(&out[j], &f.mul(c, &v));
            }
        }
    }
    out
}

fn orbit_from_factor(
    c: &NodalRationalCurve,
    d: usize,
    wb: &WedgeBasis,
    l: &Matrix<PrimeField>,
    m: &Matrix<PrimeField>,
    probes: &[Vec<u32>],
    phi: &[u32],
) -> Result<PencilOrbit, PencilError> {
    let f = c.field();
    let k = ExtensionField::new(f.clone(), phi).map_err(|e| PencilError::Closure(e.to_string()))?;
    let up = |x: &u32| k.from_prime(*x);
    let theta = k.generator();
    let n = m.rows();
    let shifted = Matrix::from_fn(k.clone(), n, n, |i, j| {
        let x = up(m.get(i, j));
        if i == j {
            k.sub(&x, &theta)
        } else {
            x
        }
    });
    let ker = shifted.kernel();
    if ker.len() != 1 {
        return Err(PencilError::Closure(format!("eigenspace of dimension {}", ker.len())));
    }
    let e = &ker[0];
    let z: Vec<Vec<u32>> = probes
        .iter()
        .map(|r| k.dot(&r.iter().map(up).collect::<Vec<_>>(), e))
        .collect();
    // Plücker vector P = Σ z_j B_j, then the plane is the row space of the skew matrix
    let lk = Matrix::from_fn(k.clone(), l.rows(), l.cols(), |i, j| up(l.get(i, j)));
    let pv = lk.vec_mul(&z);
    let skew = Matrix::from_fn(k.clone(), d + 1, d + 1, |a, b| match a.cmp(&b) {
        std::cmp::Ordering::Less => pv[wb.index_of(&[a, b])].clone(),
        std::cmp::Ordering::Greater => k.neg(&pv[wb.index_of(&[b, a])]),
        std::cmp::Ordering::Equal => k.zero(),
    });
    let plane = skew.rowspace();
    if plane.rows() != 2 {
        return Err(PencilError::Closure(format!(
            "point of rank {} is not on the Grassmannian",
            plane.rows()
        )));
    }
    let pencil = Pencil::from_span(&k, plane.row(0), plane.row(1), d)?;
    pencil.check(&k, &embedded_pairs(&k, c))?;
    Ok(PencilOrbit {
        size: phi.len() - 1,
        minpoly: phi.to_vec(),
        field: k,
        pencil,
    })
}
