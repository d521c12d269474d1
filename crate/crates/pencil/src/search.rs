//! Exhaustive and sampled searches for pencils over the curve's field.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use syz_curve::{attempt_rng, NodalRationalCurve};
use syz_linalg::{par_range, poly, Execution, Matrix, PrimeField};

use crate::error::PencilError;
use crate::pencil::{embedded_pairs, node_matrix, Pencil};

/// Outcome of testing one candidate v.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Candidate {
    None,
    Pencil(Pencil),
    /// The u-solutions form a space of dimension ≥ 3.
    Net,
    /// span{u, v} has a base point.
    BasePoint,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PencilSearch {
    pub degree: usize,
    pub pencils: Vec<PencilRecord>,
    pub candidates: u64,
    pub complete: bool,
    pub nets: u64,
    pub base_points: u64,
}

/// Serializable view of a pencil over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilRecord {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    pub degree: usize,
}

impl From<&Pencil> for PencilRecord {
    fn from(p: &Pencil) -> Self {
        Self {
            u: p.u.clone(),
            v: p.v.clone(),
            degree: p.degree,
        }
    }
}

impl PencilRecord {
    pub fn pencil(&self) -> Pencil {
        Pencil {
            u: self.u.clone(),
            v: self.v.clone(),
            degree: self.degree,
        }
    }
}

/// Options shared by the searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub exec: Execution,
    pub deadline: Option<Instant>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            exec: Execution::default(),
            deadline: None,
        }
    }
}

fn test_candidate(f: &PrimeField, pairs: &[(u32, u32)], v: &[u32], d: usize) -> Candidate {
    let kernel = node_matrix(f, pairs, v, d).kernel();
    match kernel.len() {
        0 | 1 => Candidate::None,
        2 => {
            // the kernel contains v; the plane is a degree-d pencil iff it has a degree-d member
            match Pencil::from_span(f, &kernel[0], &kernel[1], d) {
                Ok(p) => {
                    debug_assert_eq!(p.v, *v);
                    Candidate::Pencil(p)
                }
                Err(PencilError::BasePoint) => Candidate::BasePoint,
                Err(_) => Candidate::None,
            }
        }
        _ => Candidate::Net,
    }
}

/// Monic v of degree < d, indexed by i in 0..Σ_{j<d} p^j.
fn decode_v(p: u64, d: usize, mut i: u64) -> Vec<u32> {
    let mut j = 0;
    let mut block = 1u64;
    while j < d {
        if i < block {
            break;
        }
        i -= block;
        block *= p;
        j += 1;
    }
    let mut v = Vec::with_capacity(j + 1);
    for _ in 0..j {
        v.push((i % p) as u32);
        i /= p;
    }
    v.push(1);
    v
}

fn candidate_count(p: u64, d: usize) -> u64 {
    (0..d).map(|j| p.pow(j as u32)).sum()
}

const CHUNK: u64 = 1 << 14;

/// All degree-d pencils defined over the curve's field, one per point of W^1_d.
pub fn find_pencils(c: &NodalRationalCurve, d: usize, opts: SearchOptions) -> PencilSearch {
    let f = c.field();
    let pairs = embedded_pairs(f, c);
    let total = candidate_count(f.modulus() as u64, d);
    let mut out = PencilSearch {
        degree: d,
        complete: true,
        ..Default::default()
    };
    let mut start = 0;
    while start < total {
        if opts.deadline.is_some_and(|t| Instant::now() >= t) {
            out.complete = false;
            break;
        }
        let n = CHUNK.min(total - start);
        let results = par_range(opts.exec, n as usize, |i| {
            let v = decode_v(f.modulus() as u64, d, start + i as u64);
            test_candidate(f, &pairs, &v, d)
        });
        for r in results {
            match r {
                Candidate::Pencil(p) => out.pencils.push(PencilRecord::from(&p)),
                Candidate::Net => out.nets += 1,
                Candidate::BasePoint => out.base_points += 1,
                Candidate::None => {}
            }
        }
        start += n;
        out.candidates = start;
    }
    out.pencils
        .sort_by(|a, b| a.v.len().cmp(&b.v.len()).then_with(|| a.v.cmp(&b.v)));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Gonality {
    /// Smallest degree with a pencil, if one was found.
    pub value: Option<usize>,
    /// Every degree below this is known to carry no pencil.
    pub lower_bound: usize,
    /// Whether a pencil of degree `value` is defined over the curve's field.
    pub rational: bool,
}

/// Gonality by searches in increasing degree up to `max_degree`. A degree is
/// empty when the complete rational search finds nothing and the closure
/// count is zero; a nonzero closure count yields the degree even without
/// rational pencils.
pub fn gonality(c: &NodalRationalCurve, max_degree: usize, opts: SearchOptions, seed: u64) -> Gonality {
    let mut lower = 2;
    for d in 2..=max_degree {
        let s = find_pencils(c, d, opts);
        if !s.pencils.is_empty() {
            return Gonality {
                value: Some(d),
                lower_bound: d,
                rational: true,
            };
        }
        match crate::closure::closure_count(c, d, seed) {
            Ok(cl) if cl.count > 0 => {
                return Gonality {
                    value: Some(d),
                    lower_bound: d,
                    rational: false,
                }
            }
            Ok(_) if s.complete => lower = d + 1,
            _ => {
                return Gonality {
                    value: None,
                    lower_bound: lower,
                    rational: false,
                }
            }
        }
    }
    Gonality {
        value: None,
        lower_bound: lower,
        rational: false,
    }
}

/// Random rational pencils of degree d: draws random monic v of degree < d and keeps
/// those whose u-space is a pencil. Stops after `want` distinct pencils or `max_draws`.
pub fn sample_pencils(
    c: &NodalRationalCurve,
    d: usize,
    want: usize,
    max_draws: u64,
    seed: u64,
    opts: SearchOptions,
) -> PencilSearch {
    let f = c.field();
    let p = f.modulus();
    let pairs = embedded_pairs(f, c);
    let mut rng = attempt_rng(seed, d as u64);
    let mut seen = BTreeSet::new();
    let mut out = PencilSearch {
        degree: d,
        complete: false,
        ..Default::default()
    };
    let mut drawn = 0;
    while drawn < max_draws && out.pencils.len() < want {
        if opts.deadline.is_some_and(|t| Instant::now() >= t) {
            break;
        }
        let n = CHUNK.min(max_draws - drawn);
        let batch: Vec<Vec<u32>> = (0..n)
            .map(|_| {
                // degree d−1 carries almost all candidates; lower degrees are covered by enumeration
                let mut v: Vec<u32> = (0..d - 1).map(|_| rng.gen_range(0..p)).collect();
                v.push(1);
                v
            })
            .collect();
        let results = par_range(opts.exec, batch.len(), |i| test_candidate(f, &pairs, &batch[i], d));
        for r in results {
            match r {
                Candidate::Pencil(pc) => {
                    if seen.insert((pc.v.clone(), pc.u.clone())) && out.pencils.len() < want {
                        out.pencils.push(PencilRecord::from(&pc));
                    }
                }
                Candidate::Net => out.nets += 1,
                Candidate::BasePoint => out.base_points += 1,
                Candidate::None => {}
            }
        }
        drawn += n;
        out.candidates = drawn;
    }
    out
}

/// The pencil as a map: the matrix of node conditions must vanish on span{u, v}.
pub fn verify(c: &NodalRationalCurve, pcl: &Pencil) -> Result<(), PencilError> {
    let f = c.field();
    pcl.check(f, &embedded_pairs(f, c))?;
    let top = poly::degree(f, &pcl.u).max(poly::degree(f, &pcl.v));
    if top != Some(pcl.degree) || poly::degree(f, &poly::gcd(f, &pcl.u, &pcl.v)) != Some(0) {
        return Err(PencilError::Degenerate);
    }
    Ok(())
}

/// Dimension of the space of u (deg ≤ d) compatible with v, for diagnostics.
pub fn solution_dim(c: &NodalRationalCurve, v: &[u32], d: usize) -> usize {
    let f = c.field();
    let m: Matrix<PrimeField> = node_matrix(f, &embedded_pairs(f, c), v, d);
    m.cols() - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_enumerates_monic_polynomials_once() {
        let p = 3;
        let d = 3;
        let all: BTreeSet<Vec<u32>> = (0..candidate_count(p, d)).map(|i| decode_v(p, d, i)).collect();
        assert_eq!(all.len() as u64, 1 + 3 + 9);
        assert!(all.iter().all(|v| *v.last().unwrap() == 1 && v.len() <= d));
    }
}
