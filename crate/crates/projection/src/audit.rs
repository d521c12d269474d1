//! γ_{x,y}, the inclusion K_{p,1}(C) → K_{p,1}(D) and the dimension audit of
//! 0 → K_{p,1}(C) → K_{p,1}(D) → K_{p-1,1}(C, −x−y) → K_{p-1,2}(C) → ….

use serde::Serialize;
use syz_koszul::{koszul_cohomology, restricted_chain_map, KoszulGroup};
use syz_linalg::{Field, Matrix, PrimeField};

use crate::context::ProjectionContext;
use crate::error::ProjectionError;

/// γ_{x,y} : K_{p,1}(C, −x−y, ω_C) → K_{p,1}(C, ω_C).
#[derive(Clone, Debug)]
pub struct GammaMap {
    /// dim K_{p,1}(C) × dim K_{p,1}(C, −x−y); columns are images.
    pub matrix: Matrix<PrimeField>,
    /// Basis of the image, rows in K_{p,1}(C) class coordinates.
    pub image: Matrix<PrimeField>,
}

/// γ through the degree-1 rows of Γ(−x−y, ω_C) inside H^0(ω_C).
pub fn gamma_map(ctx: &ProjectionContext, p: usize) -> Result<GammaMap, ProjectionError> {
    let f = ctx.curve.field();
    let target = koszul_cohomology(ctx.ring.module(), p, 1)?;
    let source = koszul_cohomology(ctx.twisted(), p, 1)?;
    let sub = &ctx.twist[1];
    let g = ctx.genus();
    let cols: Vec<Vec<u32>> = source
        .basis_vectors()
        .iter()
        .map(|z| {
            // (T, k) ↦ Σ_m sub[k][m] (T, m)
            let blocks = z.len() / sub.rows().max(1);
            let mut out = vec![0u32; blocks * g];
            for t in 0..blocks {
                for k in 0..sub.rows() {
                    let c = z[t * sub.rows() + k];
                    if c != 0 {
                        f.axpy(&mut out[t * g..(t + 1) * g], &c, sub.row(k));
                    }
                }
            }
            target.class_coords(&out)
        })
        .collect::<Result<_, _>>()?;
    let image = Matrix::from_rows(f.clone(), target.dim(), cols.clone()).rowspace();
    let matrix = Matrix::from_rows(f.clone(), target.dim(), cols).transpose();
    Ok(GammaMap { matrix, image })
}

/// Class coordinates in K_{p,1}(D) of the image of a C-chain under the inclusion.
pub fn include_chain(
    ctx: &ProjectionContext,
    group_d: &KoszulGroup<PrimeField>,
    p: usize,
    z: &[u32],
) -> Result<Vec<u32>, ProjectionError> {
    let f = ctx.curve.field();
    let g = ctx.genus();
    let incl = &ctx.inclusion;
    let blocks = z.len() / g;
    // second factor first, then the wedge factor
    let mut second = vec![0u32; blocks * (g + 1)];
    for t in 0..blocks {
        for m in 0..g {
            let c = z[t * g + m];
            if c != 0 {
                f.axpy(&mut second[t * (g + 1)..(t + 1) * (g + 1)], &c, &incl.column(m));
            }
        }
    }
    let lifted = restricted_chain_map(&incl.transpose(), p, g + 1, &second);
    Ok(group_d.class_coords(&lifted)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct LesAudit {
    pub p: usize,
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub r4: usize,
    pub inclusion_rank: usize,
    pub injective_ok: bool,
    pub delta_surjective_ok: bool,
}

pub fn les_audit(ctx: &ProjectionContext, p: usize) -> Result<LesAudit, ProjectionError> {
    let f = ctx.curve.field();
    let kc = koszul_cohomology(ctx.ring.module(), p, 1)?;
    let kd = koszul_cohomology(ctx.glued_ring.module(), p, 1)?;
    let (r3, r4) = if p == 0 {
        (0, 0)
    } else {
        (
            koszul_cohomology(ctx.twisted(), p - 1, 1)?.dim(),
            koszul_cohomology(ctx.ring.module(), p - 1, 2)?.dim(),
        )
    };
    let rows: Vec<Vec<u32>> = kc
        .basis_vectors()
        .iter()
        .map(|z| include_chain(ctx, &kd, p, z))
        .collect::<Result<_, _>>()?;
    let inclusion_rank = Matrix::from_rows(f.clone(), kd.dim(), rows).rank();
    let (r1, r2) = (kc.dim(), kd.dim());
    let injective_ok = inclusion_rank == r1;
    let delta_surjective_ok = if r4 == 0 {
        r2 >= r1 && r2 - r1 == r3
    } else {
        r2 >= r1 && r2 - r1 <= r3
    };
    Ok(LesAudit {
        p,
        r1,
        r2,
        r3,
        r4,
        inclusion_rank,
        injective_ok,
        delta_surjective_ok,
    })
}

/// Dimension of the span of Im γ_{x,y} over several contexts, and dim K_{p,1}(C).
pub fn gamma_span(contexts: &[ProjectionContext], p: usize) -> Result<(usize, usize), ProjectionError> {
    let first = contexts.first().ok_or(ProjectionError::NoPair(0))?;
    let f = first.curve.field();
    let dim = koszul_cohomology(first.ring.module(), p, 1)?.dim();
    let mut all = Matrix::zeros(f.clone(), 0, dim);
    for ctx in contexts {
        for r in gamma_map(ctx, p)?.image.row_vecs() {
            all.push_row(&r);
        }
    }
    Ok((all.rank(), dim))
}
