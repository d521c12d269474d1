//! A curve C, two smooth points x ≠ y, and the curve D gluing them.
//!
//! H^0(ω_D) = H^0(ω_C) ⊕ ⟨s⟩ with the C-forms first (same basis as C) and s
//! last, normalized by ev(s) = Res_x(s) = 1. The node evaluation ev vanishes
//! on H^0(ω_C).

use rand::Rng;
use serde::Serialize;
use syz_curve::{canonical_ring, twist_at, CanonicalRing, CurveError, NodalRationalCurve};
use syz_koszul::GradedModule;
use syz_linalg::{Field, Matrix, PrimeField};

use crate::error::ProjectionError;

#[derive(Clone, Debug)]
pub struct ProjectionContext {
    pub curve: NodalRationalCurve,
    pub ring: CanonicalRing<PrimeField>,
    pub x: u32,
    pub y: u32,
    pub glued: NodalRationalCurve,
    pub glued_ring: CanonicalRing<PrimeField>,
    /// (g+1) × g, columns are the images of the C basis.
    pub inclusion: Matrix<PrimeField>,
    /// The node evaluation on H^0(ω_D), in D coordinates.
    pub ev: Vec<u32>,
    /// Γ(−x−y, ω_C) per degree, rows in M_q(C) coordinates.
    pub twist: Vec<Matrix<PrimeField>>,
    twisted: GradedModule<PrimeField>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextSummary {
    pub genus: usize,
    pub x: u32,
    pub y: u32,
    /// Numerator of s over the denominator of D.
    pub section: Vec<u32>,
    pub twist_dims: Vec<usize>,
}

impl ProjectionContext {
    /// `ring` must reach degree 3 for K_{p,2}(C) audits; D's ring is built to degree 2.
    pub fn new(
        curve: &NodalRationalCurve,
        ring: &CanonicalRing<PrimeField>,
        x: u32,
        y: u32,
    ) -> Result<Self, ProjectionError> {
        let f = curve.field();
        let g = curve.genus();
        let twist = twist_at(curve, ring, x, y)?;
        let twisted = ring.module().submodule(&twist)?;
        let (glued, inclusion) = curve.identify_points(x, y)?;
        let glued_ring = canonical_ring(&glued, 2)?;
        let ev: Vec<u32> = glued.canonical_basis().iter().map(|h| glued.residues(h)[g].0).collect();
        if ev[..g].iter().any(|&c| c != 0) {
            return Err(ProjectionError::Invariant(
                "node evaluation does not vanish on H^0(ω_C)".into(),
            ));
        }
        if ev[g] != f.one() {
            return Err(ProjectionError::Normalization(ev[g]));
        }
        Ok(Self {
            curve: curve.clone(),
            ring: ring.clone(),
            x,
            y,
            glued,
            glued_ring,
            inclusion,
            ev,
            twist,
            twisted,
        })
    }

    /// A context at a random pair of smooth points, redrawing while D fails its ring assertions.
    pub fn random<R: Rng>(
        curve: &NodalRationalCurve,
        ring: &CanonicalRing<PrimeField>,
        rng: &mut R,
        max_draws: usize,
    ) -> Result<Self, ProjectionError> {
        let smooth: Vec<u32> = (0..curve.field().modulus())
            .filter(|&t| !curve.is_node_coordinate(t))
            .collect();
        if smooth.len() < 2 {
            return Err(ProjectionError::NoPair(0));
        }
        for _ in 0..max_draws {
            let x = smooth[rng.gen_range(0..smooth.len())];
            let y = smooth[rng.gen_range(0..smooth.len())];
            if x == y {
                continue;
            }
            match Self::new(curve, ring, x, y) {
                Ok(c) => return Ok(c),
                Err(ProjectionError::Curve(CurveError::NotProjectivelyNormal { .. }))
                | Err(ProjectionError::Normalization(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(ProjectionError::NoPair(max_draws))
    }

    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    /// Γ(−x−y, ω_C) as a module over Sym H^0(ω_C).
    pub fn twisted(&self) -> &GradedModule<PrimeField> {
        &self.twisted
    }

    pub fn summary(&self) -> ContextSummary {
        ContextSummary {
            genus: self.genus(),
            x: self.x,
            y: self.y,
            section: self.glued.canonical_basis()[self.genus()].clone(),
            twist_dims: self.twist.iter().map(Matrix::rows).collect(),
        }
    }
}
