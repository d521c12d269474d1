//! Span test: do the minimal-rank classes of the pencils fill K_{p,1}?

use serde::Serialize;
use syz_curve::{CanonicalRing, NodalRationalCurve};
use syz_koszul::{koszul_cohomology, KoszulGroup};
use syz_linalg::{par_map, Echelon, Execution, ExtensionField, Field, Matrix, PrimeField};
use syz_pencil::{Pencil, PencilOrbit};

use crate::delta::min_rank_syzygy;
use crate::error::SyzygyError;

/// A pencil over GF(p) or one representative of a Galois orbit.
#[derive(Clone, Debug)]
pub enum PencilSource {
    Rational(Pencil<PrimeField>),
    Orbit(PencilOrbit),
}

impl PencilSource {
    pub fn degree(&self) -> usize {
        match self {
            PencilSource::Rational(p) => p.degree,
            PencilSource::Orbit(o) => o.pencil.degree,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GscReport {
    pub p: usize,
    #[serde(rename = "dim_K")]
    pub dim_k: usize,
    pub span_dim: usize,
    pub pencils: usize,
    pub classes: usize,
    pub ranks: Vec<usize>,
    /// dim K_{p,1}(; W_s) per class, in the order of `ranks`.
    pub restricted_dims: Vec<usize>,
    pub verdict: bool,
    /// span_dim after each pencil, in input order.
    pub span_history: Vec<usize>,
    /// Members skipped because their divisor met a node or was not reduced.
    pub skipped_members: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct GscOptions {
    pub exec: Execution,
    /// Members per pencil; None means g − d + 2.
    pub members: Option<usize>,
}

impl Default for GscOptions {
    fn default() -> Self {
        Self {
            exec: Execution::Parallel,
            members: None,
        }
    }
}

struct PencilClasses {
    coords: Vec<Vec<u32>>,
    ranks: Vec<usize>,
    restricted_dims: Vec<usize>,
    skipped: usize,
}

/// δ_s classes of `pcl` over F, pushed down to GF(p) cycles by splitting
/// each coefficient into its prime-field components.
fn classes_over<F: Field>(
    ring: &CanonicalRing<F>,
    denominator: &[F::Elem],
    pcl: &Pencil<F>,
    want: usize,
    target: &KoszulGroup<PrimeField>,
) -> Result<PencilClasses, SyzygyError> {
    let f = ring.field();
    let mut out = PencilClasses {
        coords: Vec::new(),
        ranks: Vec::new(),
        restricted_dims: Vec::new(),
        skipped: 0,
    };
    // (0 : 1), then (1 : b) for b = 0, 1, 2, …
    let limit = f.order().min(1 << 16) as u64;
    let members = std::iter::once((f.zero(), f.one())).chain((0..limit).map(|b| (f.one(), f.element(b))));
    let mut used = 0;
    for (a, b) in members {
        if used == want {
            break;
        }
        let cls = match min_rank_syzygy(ring, denominator, pcl, (&a, &b)) {
            Ok(c) => c,
            Err(SyzygyError::DegenerateDivisor) => {
                out.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        used += 1;
        out.ranks.push(cls.rank.rank);
        out.restricted_dims.push(cls.restricted_dim);
        let deg = f.degree();
        for i in 0..deg {
            let z: Vec<u32> = cls.class.coeffs.iter().map(|c| f.prime_components(c)[i]).collect();
            if z.iter().all(|&c| c == 0) {
                continue;
            }
            out.coords.push(target.class_coords(&z)?);
        }
    }
    if used < want {
        return Err(SyzygyError::DegenerateDivisor);
    }
    Ok(out)
}

fn classes_of_source(
    c: &NodalRationalCurve,
    ring: &CanonicalRing<PrimeField>,
    src: &PencilSource,
    want: usize,
    target: &KoszulGroup<PrimeField>,
) -> Result<PencilClasses, SyzygyError> {
    match src {
        PencilSource::Rational(pcl) => classes_over(ring, c.denominator(), pcl, want, target),
        PencilSource::Orbit(o) => {
            let ef: &ExtensionField = &o.field;
            let up = |x: &u32| ef.from_prime(*x);
            let ring_e = ring.change_field(ef, up);
            let den: Vec<_> = c.denominator().iter().map(up).collect();
            classes_over(&ring_e, &den, &o.pencil, want, target)
        }
    }
}

/// Collects δ_s classes from every pencil and measures their span in K_{p,1}.
pub fn gsc_span_test(
    c: &NodalRationalCurve,
    ring: &CanonicalRing<PrimeField>,
    pencils: &[PencilSource],
    p: usize,
    opts: GscOptions,
) -> Result<GscReport, SyzygyError> {
    let f = ring.field();
    let target = koszul_cohomology(ring.module(), p, 1)?;
    let dim_k = target.dim();
    let g = ring.genus();
    for src in pencils {
        if src.degree() + p != g {
            return Err(SyzygyError::Invariant(format!(
                "pencil of degree {} does not give classes at p = {p}",
                src.degree()
            )));
        }
    }
    let want = opts.members.unwrap_or(p + 2);
    let per: Vec<Result<PencilClasses, SyzygyError>> =
        par_map(opts.exec, pencils, |src| classes_of_source(c, ring, src, want, &target));
    let mut span = Matrix::zeros(f.clone(), 0, dim_k);
    let mut echelon: Echelon<PrimeField> = span.rref();
    let mut report = GscReport {
        p,
        dim_k,
        span_dim: 0,
        pencils: pencils.len(),
        classes: 0,
        ranks: Vec::new(),
        restricted_dims: Vec::new(),
        verdict: dim_k == 0,
        span_history: Vec::new(),
        skipped_members: 0,
    };
    for r in per {
        let r = r?;
        report.classes += r.ranks.len();
        report.ranks.extend(r.ranks);
        report.restricted_dims.extend(r.restricted_dims);
        report.skipped_members += r.skipped;
        for v in r.coords {
            if !echelon.contains(&v) {
                span.push_row(&v);
                echelon = span.rref();
            }
        }
        report.span_history.push(echelon.rank());
    }
    report.span_dim = echelon.rank();
    report.verdict = report.span_dim == dim_k;
    Ok(report)
}
