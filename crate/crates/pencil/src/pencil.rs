//! Pencils u/v on nodal rational curves and their member divisors.

use serde::Serialize;
use syz_curve::NodalRationalCurve;
use syz_linalg::{poly, Field, Matrix, PrimeField};

use crate::error::PencilError;

/// A degree-d map (u : v) to the line compatible with every node, in canonical form:
/// the reduced echelon basis of span{u, v} with columns ordered by descending degree.
/// So u is monic of degree d, v is monic of degree < d, and u has no term in deg v.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pencil<F: Field = PrimeField> {
    pub u: Vec<F::Elem>,
    pub v: Vec<F::Elem>,
    pub degree: usize,
}

/// Matrix of the node conditions on u for fixed v: row i is
/// (x_i^k v(y_i) − y_i^k v(x_i))_{k=0..d}.
pub fn node_matrix<F: Field>(f: &F, pairs: &[(F::Elem, F::Elem)], v: &[F::Elem], d: usize) -> Matrix<F> {
    Matrix::from_fn(f.clone(), pairs.len(), d + 1, |i, k| {
        let (x, y) = &pairs[i];
        let a = f.mul(&f.pow(x, k as u128), &poly::eval(f, v, y));
        let b = f.mul(&f.pow(y, k as u128), &poly::eval(f, v, x));
        f.sub(&a, &b)
    })
}

/// Node pairs of a curve embedded in `f`.
pub fn embedded_pairs<F: Field>(f: &F, c: &NodalRationalCurve) -> Vec<(F::Elem, F::Elem)> {
    c.pairs()
        .iter()
        .map(|&(x, y)| (f.from_prime(x), f.from_prime(y)))
        .collect()
}

/// u(x)v(y) − u(y)v(x) at a node pair.
pub fn node_defect<F: Field>(f: &F, u: &[F::Elem], v: &[F::Elem], x: &F::Elem, y: &F::Elem) -> F::Elem {
    let a = f.mul(&poly::eval(f, u, x), &poly::eval(f, v, y));
    let b = f.mul(&poly::eval(f, u, y), &poly::eval(f, v, x));
    f.sub(&a, &b)
}

impl<F: Field> Pencil<F> {
    /// Canonical form of span{a, b} if it is a base-point-free degree-d pencil.
    pub fn from_span(f: &F, a: &[F::Elem], b: &[F::Elem], d: usize) -> Result<Self, PencilError> {
        let rev = |p: &[F::Elem]| -> Vec<F::Elem> {
            let mut out = vec![f.zero(); d + 1];
            for (i, c) in p.iter().enumerate() {
                if !f.is_zero(c) {
                    assert!(i <= d, "polynomial degree exceeds pencil degree");
                    out[d - i] = c.clone();
                }
            }
            out
        };
        let m = Matrix::from_rows(f.clone(), d + 1, vec![rev(a), rev(b)]);
        let e = m.rref();
        if e.rank() != 2 {
            return Err(PencilError::Degenerate);
        }
        if e.pivots[0] != 0 {
            // no member of degree d
            return Err(PencilError::Degenerate);
        }
        let unrev = |row: &[F::Elem]| poly::trim(f, row.iter().rev().cloned().collect());
        let u = unrev(e.rows.row(0));
        let v = unrev(e.rows.row(1));
        if poly::degree(f, &poly::gcd(f, &u, &v)) != Some(0) {
            return Err(PencilError::BasePoint);
        }
        Ok(Self { u, v, degree: d })
    }

    /// Checks all bilinear node conditions exactly.
    pub fn check(&self, f: &F, pairs: &[(F::Elem, F::Elem)]) -> Result<(), PencilError> {
        for (i, (x, y)) in pairs.iter().enumerate() {
            if !f.is_zero(&node_defect(f, &self.u, &self.v, x, y)) {
                return Err(PencilError::NodeCondition(i));
            }
        }
        Ok(())
    }

    /// The member a·u + b·v.
    pub fn member(&self, f: &F, a: &F::Elem, b: &F::Elem) -> Result<Vec<F::Elem>, PencilError> {
        if f.is_zero(a) && f.is_zero(b) {
            return Err(PencilError::ZeroMember);
        }
        Ok(poly::add(f, &poly::scale(f, &self.u, a), &poly::scale(f, &self.v, b)))
    }

    /// A member independent of (a : b), used as the numerator of φ = t/s.
    pub fn complement(&self, f: &F, a: &F::Elem, _b: &F::Elem) -> Vec<F::Elem> {
        if f.is_zero(a) {
            self.u.clone()
        } else {
            self.v.clone()
        }
    }

    /// Multiplicity of ∞ in the divisor of a member s (degree drop).
    pub fn infinity_multiplicity(&self, f: &F, s: &[F::Elem]) -> usize {
        self.degree - poly::degree(f, s).unwrap_or(0)
    }
}

/// Divisor of a member of a pencil over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilDivisor {
    pub member: (u32, u32),
    /// Rational roots, repeated by multiplicity, ascending.
    pub roots: Vec<u32>,
    pub infinity: usize,
    /// Degrees of the irreducible factors without rational roots (only when reduced).
    pub nonrational_degrees: Vec<usize>,
    pub hits_node: bool,
    pub reduced: bool,
}

impl PencilDivisor {
    pub fn degree(&self) -> usize {
        self.roots.len() + self.infinity + self.nonrational_degrees.iter().sum::<usize>()
    }

    /// Usable for δ_s: reduced and away from the nodes.
    pub fn is_general(&self) -> bool {
        self.reduced && !self.hits_node
    }
}

/// Whether a member avoids the nodes and is reduced (generic over the field).
pub fn member_is_general<F: Field>(f: &F, pcl: &Pencil<F>, s: &[F::Elem], denominator: &[F::Elem]) -> bool {
    let inf = pcl.infinity_multiplicity(f, s);
    let reduced = inf <= 1 && (poly::degree(f, s).unwrap_or(0) == 0 || poly::is_squarefree(f, s));
    let coprime = poly::degree(f, &poly::gcd(f, s, denominator)) == Some(0);
    reduced && coprime
}

pub fn pencil_divisor(c: &NodalRationalCurve, pcl: &Pencil, member: (u32, u32)) -> Result<PencilDivisor, PencilError> {
    let f = c.field();
    let s = pcl.member(f, &member.0, &member.1)?;
    let infinity = pcl.infinity_multiplicity(f, &s);
    let mut roots = Vec::new();
    let mut rest = s.clone();
    for r in poly::roots(f, &s) {
        let lin = [f.neg(&r), 1];
        loop {
            let (q, rem) = poly::divrem(f, &rest, &lin);
            if !rem.is_empty() {
                break;
            }
            roots.push(r);
            rest = q;
        }
    }
    let squarefree = poly::degree(f, &s).unwrap_or(0) == 0 || poly::is_squarefree(f, &s);
    let reduced = squarefree && infinity <= 1;
    let nonrational_degrees = if squarefree && poly::degree(f, &rest).unwrap_or(0) > 0 {
        poly::distinct_degree(f, &rest)
            .into_iter()
            .flat_map(|(d, g)| std::iter::repeat(d).take(poly::degree(f, &g).unwrap_or(0) / d))
            .collect()
    } else {
        Vec::new()
    };
    let hits_node = roots.iter().any(|&r| c.is_node_coordinate(r))
        || poly::degree(f, &poly::gcd(f, &s, c.denominator())) != Some(0);
    Ok(PencilDivisor {
        member,
        roots,
        infinity,
        nonrational_degrees,
        hits_node,
        reduced,
    })
}
