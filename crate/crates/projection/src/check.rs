//! Random D-cycles and the agreement check of the two projection modes.

use rand::Rng;
use serde::Serialize;
use syz_koszul::{apply_differential, chain_len, koszul_cohomology, KoszulClass};
use syz_linalg::{Field, PrimeField};

use crate::audit::gamma_map;
use crate::context::ProjectionContext;
use crate::error::ProjectionError;
use crate::project::{decompose, project_class, Mode};

/// A random combination of K_{p,1}(D) basis cycles plus a random boundary.
pub fn random_cycle<R: Rng>(
    ctx: &ProjectionContext,
    p: usize,
    rng: &mut R,
) -> Result<KoszulClass<PrimeField>, ProjectionError> {
    let m = ctx.glued_ring.module();
    let f = m.field();
    let group = koszul_cohomology(m, p, 1)?;
    let mut z = vec![0u32; chain_len(m, p, 1)];
    for b in group.basis_vectors() {
        f.axpy(&mut z, &rng.gen_range(0..f.modulus()), &b);
    }
    let beta: Vec<u32> = (0..chain_len(m, p + 1, 0))
        .map(|_| rng.gen_range(0..f.modulus()))
        .collect();
    let db = apply_differential(m, p + 1, 0, &beta)?;
    f.axpy(&mut z, &1, &db);
    Ok(KoszulClass::native(p, 1, z))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub p: usize,
    pub samples: usize,
    /// Samples where ι and the q_x formula give the same class.
    pub agree: usize,
    pub alpha4_zero: usize,
    /// Samples whose projection lies in Im γ_{x,y}.
    pub in_gamma: usize,
    pub ok: bool,
}

/// Projects `samples` random cycles of K_{p,1}(D) both ways.
pub fn consistency_check<R: Rng>(
    ctx: &ProjectionContext,
    p: usize,
    samples: usize,
    rng: &mut R,
) -> Result<ConsistencyReport, ProjectionError> {
    let kc = koszul_cohomology(ctx.ring.module(), p - 1, 1)?;
    let img = gamma_map(ctx, p - 1)?.image.rref();
    let mut rep = ConsistencyReport {
        p,
        samples,
        agree: 0,
        alpha4_zero: 0,
        in_gamma: 0,
        ok: false,
    };
    for _ in 0..samples {
        let cls = random_cycle(ctx, p, rng)?;
        if decompose(ctx, p, &cls.coeffs)?.alpha4.iter().all(|&c| c == 0) {
            rep.alpha4_zero += 1;
        }
        let a = kc.class_coords(&project_class(ctx, &cls, Mode::Iota)?.coeffs)?;
        let b = kc.class_coords(&project_class(ctx, &cls, Mode::QxFormula)?.coeffs)?;
        if a == b {
            rep.agree += 1;
        }
        if img.contains(&a) {
            rep.in_gamma += 1;
        }
    }
    rep.ok = rep.agree == samples && rep.alpha4_zero == samples && rep.in_gamma == samples;
    Ok(rep)
}
