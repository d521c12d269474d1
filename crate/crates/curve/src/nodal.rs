//! m-nodal rational curves: node pairs on the affine line and their
//! canonical forms h(t) dt / D(t) with D(t) = ∏ (t − x_i)(t − y_i).

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use syz_linalg::{poly, Field, Matrix, PrimeField};

use crate::error::CurveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    RandomPairs,
    FromPencil,
}

/// Reproducible description of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub genus: usize,
    pub modulus: u32,
    pub seed: u64,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(u32, u32)>>,
}

impl CurveSpec {
    pub fn random(genus: usize, modulus: u32, seed: u64) -> Self {
        Self {
            genus,
            modulus,
            seed,
            mode: Mode::RandomPairs,
            pairs: None,
        }
    }

    pub fn from_pencil(genus: usize, modulus: u32, seed: u64) -> Self {
        Self {
            genus,
            modulus,
            seed,
            mode: Mode::FromPencil,
            pairs: None,
        }
    }

    pub fn explicit(modulus: u32, pairs: Vec<(u32, u32)>) -> Self {
        Self {
            genus: pairs.len(),
            modulus,
            seed: 0,
            mode: Mode::RandomPairs,
            pairs: Some(pairs),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NodalRationalCurve {
    field: PrimeField,
    pairs: Vec<(u32, u32)>,
    denominator: Vec<u32>,
    // coefficient vectors of length 2g − 1
    canonical_basis: Vec<Vec<u32>>,
    marked: Vec<u32>,
    seed_map: Option<(Vec<u32>, Vec<u32>)>,
}

impl NodalRationalCurve {
    /// The curve obtained by gluing x_i to y_i; canonical basis in reduced echelon form.
    pub fn new(field: PrimeField, pairs: Vec<(u32, u32)>) -> Result<Self, CurveError> {
        let basis = canonical_space(&field, &pairs)?;
        Self::with_basis(field, pairs, basis)
    }

    fn with_basis(field: PrimeField, pairs: Vec<(u32, u32)>, basis: Vec<Vec<u32>>) -> Result<Self, CurveError> {
        let g = pairs.len();
        if basis.len() != g {
            return Err(CurveError::CanonicalDimension {
                found: basis.len(),
                expected: g,
            });
        }
        let coords: Vec<u32> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
        let denominator = poly::from_roots(&field, &coords);
        Ok(Self {
            field,
            pairs,
            denominator,
            canonical_basis: basis,
            marked: Vec::new(),
            seed_map: None,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }
    pub fn genus(&self) -> usize {
        self.pairs.len()
    }
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }
    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }
    pub fn canonical_basis(&self) -> &[Vec<u32>] {
        &self.canonical_basis
    }
    pub fn marked_points(&self) -> &[u32] {
        &self.marked
    }
    /// The degree-(k+1) map (u, v) whose fibers produced the node pairs, if any.
    pub fn seed_map(&self) -> Option<&(Vec<u32>, Vec<u32>)> {
        self.seed_map.as_ref()
    }

    pub fn is_node_coordinate(&self, x: u32) -> bool {
        self.pairs.iter().any(|&(a, b)| a == x || b == x)
    }

    /// Residues (Res_{x_i}, Res_{y_i}) of h(t) dt / D(t) at every node pair.
    pub fn residues(&self, h: &[u32]) -> Vec<(u32, u32)> {
        let f = &self.field;
        self.pairs
            .iter()
            .map(|&(x, y)| {
                (
                    residue_at(f, h, &self.denominator, x),
                    residue_at(f, h, &self.denominator, y),
                )
            })
            .collect()
    }

    pub fn with_marked_points(mut self, points: &[u32]) -> Result<Self, CurveError> {
        let mut seen = HashSet::new();
        for &x in points {
            self.check_smooth(x)?;
            if !seen.insert(x) {
                return Err(CurveError::EqualPoints);
            }
        }
        self.marked = points.to_vec();
        Ok(self)
    }

    pub fn check_smooth(&self, x: u32) -> Result<(), CurveError> {
        if x >= self.field.modulus() {
            return Err(CurveError::Spec(format!(
                "{x} is not reduced mod {}",
                self.field.modulus()
            )));
        }
        if self.is_node_coordinate(x) {
            return Err(CurveError::PointAtNode(x));
        }
        Ok(())
    }

    /// The genus g+1 curve gluing x to y, with canonical basis
    /// h_j·(t−x)(t−y) for the basis h_j of C, followed by a form s with
    /// Res_x(s) = 1 reduced against the first g. Also returns the
    /// (g+1) × g inclusion H^0(ω_C) → H^0(ω_D), columns are images.
    pub fn identify_points(&self, x: u32, y: u32) -> Result<(NodalRationalCurve, Matrix<PrimeField>), CurveError> {
        self.check_smooth(x)?;
        self.check_smooth(y)?;
        if x == y {
            return Err(CurveError::EqualPoints);
        }
        let f = &self.field;
        let g = self.genus();
        let mut pairs = self.pairs.clone();
        pairs.push((x, y));
        let len = 2 * (g + 1) - 1;
        let quad = poly::from_roots(f, &[x, y]);
        let lifted: Vec<Vec<u32>> = self
            .canonical_basis
            .iter()
            .map(|h| pad(poly::mul(f, &poly::trim(f, h.clone()), &quad), len))
            .collect();
        let all = canonical_space(f, &pairs)?;
        let sub = Matrix::from_rows(f.clone(), len, lifted.clone());
        let ech = sub.rref();
        let mut dcurve = NodalRationalCurve::with_basis(f.clone(), pairs, all.clone())?;
        // any form not in the span of the lifted ones has Res_x ≠ 0
        let extra = all
            .iter()
            .map(|h| ech.reduce(h))
            .find(|h| h.iter().any(|&c| c != 0))
            .ok_or(CurveError::CanonicalDimension {
                found: g,
                expected: g + 1,
            })?;
        let res_x = dcurve.residues(&extra)[g].0;
        let inv = f.inv(&res_x).ok_or(CurveError::CanonicalDimension {
            found: g,
            expected: g + 1,
        })?;
        let s: Vec<u32> = extra.iter().map(|c| f.mul(c, &inv)).collect();
        let mut basis = lifted;
        basis.push(s);
        dcurve.canonical_basis = basis;
        dcurve.marked = self.marked.iter().copied().filter(|&m| m != x && m != y).collect();
        let inclusion = Matrix::from_fn(f.clone(), g + 1, g, |i, j| u32::from(i == j));
        Ok((dcurve, inclusion))
    }
}

fn pad(mut v: Vec<u32>, len: usize) -> Vec<u32> {
    debug_assert!(v.len() <= len);
    v.resize(len, 0);
    v
}

/// Res_x of h(t) dt / den(t) at a simple root x of den.
fn residue_at(f: &PrimeField, h: &[u32], den: &[u32], x: u32) -> u32 {
    let (quot, r) = poly::divrem(f, den, &[f.neg(&x), 1]);
    debug_assert!(r.is_empty(), "x is a root of the denominator");
    f.div(&poly::eval(f, h, &x), &poly::eval(f, &quot, &x))
        .expect("simple pole")
}

/// Kernel of the residue conditions Res_{x_i} + Res_{y_i} = 0 on numerators of degree ≤ 2m−2.
fn canonical_space(f: &PrimeField, pairs: &[(u32, u32)]) -> Result<Vec<Vec<u32>>, CurveError> {
    let m = pairs.len();
    if m == 0 {
        return Err(CurveError::Spec("at least one node pair is required".into()));
    }
    let mut seen = HashSet::new();
    for &(x, y) in pairs {
        if x >= f.modulus() || y >= f.modulus() {
            return Err(CurveError::Spec(format!("coordinate out of range mod {}", f.modulus())));
        }
        if !seen.insert(x) || !seen.insert(y) {
            return Err(CurveError::CoincidentPoints);
        }
    }
    let coords: Vec<u32> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
    let den = poly::from_roots(f, &coords);
    let dprime = poly::derivative(f, &den);
    let len = 2 * m - 1;
    let a = Matrix::from_fn(f.clone(), m, len, |i, k| {
        let (x, y) = pairs[i];
        let rx = f
            .div(&f.pow(&x, k as u128), &poly::eval(f, &dprime, &x))
            .expect("distinct roots");
        let ry = f
            .div(&f.pow(&y, k as u128), &poly::eval(f, &dprime, &y))
            .expect("distinct roots");
        f.add(&rx, &ry)
    });
    let basis = a.kernel();
    if basis.len() != m {
        return Err(CurveError::CanonicalDimension {
            found: basis.len(),
            expected: m,
        });
    }
    Ok(basis)
}

/// Attempt `attempt` of the random stream for `seed`.
pub fn attempt_rng(seed: u64, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    rng
}

const MAX_DRAWS: usize = 64;

/// Builds the curve described by `spec`, using the random stream of `attempt`.
pub fn build_curve_attempt(spec: &CurveSpec, attempt: u64) -> Result<NodalRationalCurve, CurveError> {
    let field = PrimeField::new(spec.modulus).map_err(|e| CurveError::Spec(e.to_string()))?;
    if let Some(pairs) = &spec.pairs {
        if pairs.len() != spec.genus {
            return Err(CurveError::Spec(format!(
                "{} pairs for genus {}",
                pairs.len(),
                spec.genus
            )));
        }
        return NodalRationalCurve::new(field, pairs.clone());
    }
    if spec.genus == 0 {
        return Err(CurveError::Spec("genus must be positive".into()));
    }
    let needed = 2 * spec.genus;
    if (spec.modulus as usize) < needed {
        return Err(CurveError::FieldTooSmall {
            modulus: spec.modulus,
            needed,
        });
    }
    let mut rng = attempt_rng(spec.seed, attempt);
    match spec.mode {
        Mode::RandomPairs => {
            let pts = sample(&mut rng, spec.modulus as usize, needed);
            let pts: Vec<u32> = pts.into_iter().map(|i| i as u32).collect();
            let pairs = pts.chunks(2).map(|c| (c[0], c[1])).collect();
            NodalRationalCurve::new(field, pairs)
        }
        Mode::FromPencil => {
            if spec.genus % 2 != 0 {
                return Err(CurveError::Spec("from_pencil needs even genus g = 2k".into()));
            }
            let d = spec.genus / 2 + 1;
            for _ in 0..MAX_DRAWS {
                if let Some((u, v, pairs)) = pencil_fibers(&field, d, spec.genus, &mut rng) {
                    let mut c = NodalRationalCurve::new(field.clone(), pairs)?;
                    c.seed_map = Some((u, v));
                    return Ok(c);
                }
            }
            Err(CurveError::RetriesExhausted(MAX_DRAWS))
        }
    }
}

pub fn build_curve(spec: &CurveSpec) -> Result<NodalRationalCurve, CurveError> {
    build_curve_attempt(spec, 0)
}

/// A random degree-d map u/v and one node pair from each of `m` distinct fibers.
fn pencil_fibers<R: Rng>(
    f: &PrimeField,
    d: usize,
    m: usize,
    rng: &mut R,
) -> Option<(Vec<u32>, Vec<u32>, Vec<(u32, u32)>)> {
    let p = f.modulus();
    let u: Vec<u32> = (0..=d).map(|_| rng.gen_range(0..p)).collect();
    let v: Vec<u32> = (0..=d).map(|_| rng.gen_range(0..p)).collect();
    let (u, v) = (poly::trim(f, u), poly::trim(f, v));
    if poly::degree(f, &u).max(poly::degree(f, &v)) != Some(d) || poly::degree(f, &poly::gcd(f, &u, &v)) != Some(0) {
        return None;
    }
    let mut values: Vec<u32> = (0..=p).collect(); // p stands for ∞
    for i in (1..values.len()).rev() {
        values.swap(i, rng.gen_range(0..=i));
    }
    let mut pairs = Vec::with_capacity(m);
    for c in values {
        let fiber = if c == p {
            v.clone()
        } else {
            poly::sub(f, &u, &poly::scale(f, &v, &c))
        };
        if fiber.is_empty() {
            continue;
        }
        let mut roots = poly::roots(f, &fiber);
        if roots.len() >= 2 {
            roots.truncate(2);
            pairs.push((roots[0], roots[1]));
            if pairs.len() == m {
                return Some((u, v, pairs));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_at_simple_pole() {
        let f = PrimeField::new(101).unwrap();
        let den = poly::from_roots(&f, &[2, 5]);
        // (1+t)/((t−2)(t−5)) at 5: 6/3
        assert_eq!(residue_at(&f, &[1, 1], &den, 5), 2);
    }

    #[test]
    fn one_node_has_constant_forms() {
        let f = PrimeField::new(7).unwrap();
        let c = NodalRationalCurve::new(f, vec![(1, 3)]).unwrap();
        assert_eq!(c.canonical_basis(), &[vec![1u32]]);
    }
}
