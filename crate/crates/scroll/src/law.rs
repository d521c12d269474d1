//! The last strand K_{f-1,1} of a scroll is spanned by the classes of the
//! ruling pencil, and (a : b) ↦ δ_{a+bt} is a binary form of degree f−2.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use syz_koszul::koszul_cohomology_with;
use syz_linalg::{Execution, Field, Matrix};
use syz_syzygy::pencil_class_in;

use crate::error::ScrollError;
use crate::scroll::{ruling_multiple, ScrollData};

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub exponents: Vec<usize>,
    pub target_dim: usize,
    pub span_dim: usize,
    pub span_ok: bool,
    /// Degree of the interpolating polynomial in b for the chart a = 1.
    pub fitted_degree: Option<usize>,
    pub degree_ok: bool,
    pub members: usize,
    pub ranks: Vec<usize>,
    /// On failure, ℓ(δ_b) at every sample, as prime-field components.
    pub samples: Vec<Vec<u32>>,
}

/// δ for the member σ = 1 + b·t of H^0(R) with complement t, so σ ∧ t = 1.
fn ruling_class<F: Field>(
    s: &ScrollData<F>,
    target: &syz_koszul::KoszulGroup<F>,
    b: &F::Elem,
) -> Result<(Vec<F::Elem>, usize), ScrollError> {
    let f = s.field();
    let e = &s.exponents;
    let w = Matrix::from_rows(f.clone(), s.module().dim_v(), ruling_multiple(f, e, (&f.one(), b)));
    let phi = Matrix::from_rows(
        f.clone(),
        s.module().dim_v(),
        ruling_multiple(f, e, (&f.zero(), &f.one())),
    );
    let cls = pencil_class_in(s.module(), target, &w, &phi)?;
    Ok((target.class_coords(&cls.class.coeffs)?, cls.rank.rank))
}

pub fn scroll_last_strand_law<F: Field>(
    s: &ScrollData<F>,
    seed: u64,
    exec: Execution,
) -> Result<LawReport, ScrollError> {
    let f = s.field();
    let ff = s.f();
    if ff < 3 {
        return Err(ScrollError::LawNeedsThree);
    }
    let p = ff - 1;
    let target = koszul_cohomology_with(s.module(), p, 1, exec)?;
    let k = target.dim();
    let n_fit = ff - 1;
    let members = n_fit + 3;
    if (members as u128) > f.order() {
        return Err(ScrollError::Syzygy(syz_syzygy::SyzygyError::Invariant(
            "field too small for the interpolation".into(),
        )));
    }
    let bs: Vec<F::Elem> = (0..members as u64).map(|i| f.element(i)).collect();
    let mut coords = Vec::with_capacity(members);
    let mut ranks = Vec::with_capacity(members);
    for b in &bs {
        let (c, r) = ruling_class(s, &target, b)?;
        coords.push(c);
        ranks.push(r);
    }
    let span_dim = Matrix::from_rows(f.clone(), k, coords.clone()).rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ell: Vec<F::Elem> = (0..k).map(|_| f.random(&mut rng)).collect();
    let values: Vec<F::Elem> = coords.iter().map(|c| f.dot(&ell, c)).collect();
    // Vandermonde fit on the first f−1 samples: coefficients of degree ≤ f−2
    let vander = |b: &F::Elem| (0..n_fit).map(|i| f.pow(b, i as u128)).collect::<Vec<_>>();
    let a = Matrix::from_rows(f.clone(), n_fit, bs[..n_fit].iter().map(vander).collect());
    let fit = a.solve(&values[..n_fit]).ok();
    let (fitted_degree, verified) = match &fit {
        Some(c) => {
            let deg = (0..n_fit).rev().find(|&i| !f.is_zero(&c[i]));
            let ok = bs[n_fit..]
                .iter()
                .zip(&values[n_fit..])
                .all(|(b, y)| f.dot(&vander(b), c) == *y);
            (deg, ok)
        }
        None => (None, false),
    };
    let degree_ok = verified && fitted_degree == Some(ff - 2);
    let span_ok = k == ff - 1 && span_dim == k;
    let samples = if degree_ok && span_ok {
        Vec::new()
    } else {
        values.iter().map(|y| f.prime_components(y)).collect()
    };
    Ok(LawReport {
        exponents: s.exponents.clone(),
        target_dim: k,
        span_dim,
        span_ok,
        fitted_degree,
        degree_ok,
        members,
        ranks,
        samples,
    })
}
