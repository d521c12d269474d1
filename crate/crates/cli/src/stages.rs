//! The computations behind each subcommand, recorded into a [`Run`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use syz_curve::{CanonicalRing, NodalRationalCurve};
use syz_koszul::koszul_cohomology_with;
use syz_linalg::{binomial, PrimeField};
use syz_pencil::{
    catalan, closure_count, find_pencils, gonality, sample_pencils, ClosureSummary, Gonality, PencilSearch,
    SearchOptions,
};
use syz_projection::{
    consistency_check, gamma_span, les_audit, ConsistencyReport, ContextSummary, LesAudit, ProjectionContext,
};
use syz_scroll::{build_scroll, scroll_last_strand_law, strand_table, LawReport, ScrollError, StrandRow};
use syz_syzygy::{gsc_span_test, GscOptions, GscReport, PencilSource};

use crate::report::{config_error, Run};

#[derive(Clone, Debug, Serialize)]
pub struct BettiSection {
    pub genus: usize,
    pub modulus: u32,
    /// [p, q, dim K_{p,q}]
    pub table: Vec<[usize; 3]>,
}

impl BettiSection {
    pub fn get(&self, p: usize, q: usize) -> Option<usize> {
        self.table.iter().find(|r| r[0] == p && r[1] == q).map(|r| r[2])
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("p,q,dim\n");
        for [p, q, d] in &self.table {
            s.push_str(&format!("{p},{q},{d}\n"));
        }
        s
    }
}

pub fn betti(run: &mut Run, ring: &CanonicalRing<PrimeField>) -> anyhow::Result<BettiSection> {
    let g = ring.genus();
    let qtop = ring.qmax().saturating_sub(1);
    let sec = run.stage("betti", |run| {
        let m = ring.module();
        let mut table = Vec::new();
        for q in 0..=qtop {
            for p in 0..=g.saturating_sub(2) {
                table.push([p, q, koszul_cohomology_with(m, p, q, run.exec)?.dim()]);
            }
        }
        Ok(BettiSection {
            genus: g,
            modulus: ring.field().modulus(),
            table,
        })
    })?;
    run.verdict("betti.quadrics", sec.get(1, 1) == Some(binomial(g - 2, 2)));
    if g % 2 == 0 && g >= 4 {
        let k = g / 2;
        let p1 = (k..=g - 2).all(|p| sec.get(p, 1).map_or(true, |d| d == 0));
        run.verdict("voisin.k_p1_vanishing", p1);
        if qtop >= 2 {
            let p2 = (0..=k.saturating_sub(2)).all(|p| sec.get(p, 2) == Some(0));
            run.verdict("voisin.k_p2_vanishing", p2);
        }
    }
    Ok(sec)
}

#[derive(Clone, Debug, Serialize)]
pub struct PencilSection {
    pub degree: usize,
    pub method: &'static str,
    pub search: PencilSearch,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalan: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure_error: Option<String>,
}

/// Pencils of degree d; exhaustive when the candidate count fits `budget`, sampled otherwise.
pub fn pencils(run: &mut Run, c: &NodalRationalCurve, d: usize, budget: u64) -> anyhow::Result<PencilSection> {
    let g = c.genus();
    if d < 2 || d > g {
        return Err(config_error(format!("degree {d} out of range 2..={g}")));
    }
    let seed = run.config().seed;
    let sec = run.stage(&format!("pencils_d{d}"), |run| {
        let opts = SearchOptions {
            exec: run.exec,
            deadline: run.deadline(),
        };
        let p = c.field().modulus() as u64;
        let candidates: u64 = (0..d as u32).map(|j| p.saturating_pow(j)).sum();
        let (method, search) = if candidates <= budget {
            ("exhaustive", find_pencils(c, d, opts))
        } else {
            ("sampled", sample_pencils(c, d, 64, budget, seed, opts))
        };
        let mut sec = PencilSection {
            degree: d,
            method,
            search,
            closure: None,
            catalan: None,
            closure_error: None,
        };
        if g % 2 == 0 && d == g / 2 + 1 {
            sec.catalan = Some(catalan(g / 2));
            match closure_count(c, d, seed) {
                Ok(cl) => sec.closure = Some(cl.summary()),
                Err(e) => sec.closure_error = Some(e.to_string()),
            }
        }
        Ok(sec)
    })?;
    if let Some(cat) = sec.catalan {
        let ok = sec
            .closure
            .as_ref()
            .is_some_and(|cl| cl.count <= cat && sec.search.pencils.len() <= cl.count);
        run.verdict(format!("pencils.d{d}.count_le_catalan"), ok);
    }
    if g % 2 == 0 && d <= g / 2 && sec.search.complete {
        run.verdict(
            format!("pencils.d{d}.empty_below_gonality"),
            sec.search.pencils.is_empty(),
        );
    }
    Ok(sec)
}

pub fn gonality_stage(run: &mut Run, c: &NodalRationalCurve) -> anyhow::Result<Gonality> {
    let g = c.genus();
    let k = g / 2;
    let seed = run.config().seed;
    let gon = run.stage("gonality", |run| {
        Ok(gonality(
            c,
            k + 1,
            SearchOptions {
                exec: run.exec,
                deadline: run.deadline(),
            },
            seed,
        ))
    })?;
    if g % 2 == 0 {
        run.verdict(
            "gonality.equals_k_plus_1",
            gon.value == Some(k + 1) && gon.lower_bound == k + 1,
        );
    }
    Ok(gon)
}

#[derive(Clone, Debug, Serialize)]
pub struct GscSection {
    pub degree: usize,
    /// "closure" (all points of W^1_d) or "sampled" (random rational pencils).
    pub source: &'static str,
    pub complete: bool,
    pub rounds: usize,
    pub report: GscReport,
}

const MAX_ROUNDS: usize = 4;

/// Span test at p. The minimal degree uses every point of W^1_{k+1}; higher degrees
/// use sampled rational pencils, doubling the sample until the span is full.
pub fn gsc(
    run: &mut Run,
    c: &NodalRationalCurve,
    ring: &CanonicalRing<PrimeField>,
    p: usize,
    members: Option<usize>,
) -> anyhow::Result<GscSection> {
    let g = c.genus();
    if g % 2 != 0 {
        return Err(config_error(format!("span test needs even genus, got {g}")));
    }
    let k = g / 2;
    if p == 0 || p >= k {
        return Err(config_error(format!("p = {p} outside 1..{k} for genus {g}")));
    }
    let seed = run.config().seed;
    let d = g - p;
    let sec = run.stage(&format!("gsc_p{p}"), |run| {
        let opts = GscOptions {
            exec: run.exec,
            members,
        };
        if d == k + 1 {
            let cl = closure_count(c, d, seed)?;
            let srcs: Vec<PencilSource> = cl.orbits.into_iter().map(PencilSource::Orbit).collect();
            let report = gsc_span_test(c, ring, &srcs, p, opts)?;
            return Ok(GscSection {
                degree: d,
                source: "closure",
                complete: true,
                rounds: 1,
                report,
            });
        }
        let dim = syz_koszul::koszul_cohomology_with(ring.module(), p, 1, run.exec)?.dim();
        let mut want = 2 * dim.div_ceil(p + 2) + 4;
        let mut rounds = 0;
        loop {
            rounds += 1;
            let sopts = SearchOptions {
                exec: run.exec,
                deadline: run.deadline(),
            };
            let found = sample_pencils(c, d, want, 1 << 22, seed, sopts);
            run.check_budget(&format!("gsc_p{p}"))?;
            let srcs: Vec<PencilSource> = found
                .pencils
                .iter()
                .map(|r| PencilSource::Rational(r.pencil()))
                .collect();
            let report = gsc_span_test(c, ring, &srcs, p, opts)?;
            if report.verdict || rounds == MAX_ROUNDS || found.pencils.len() < want {
                return Ok(GscSection {
                    degree: d,
                    source: "sampled",
                    complete: false,
                    rounds,
                    report,
                });
            }
            want *= 2;
        }
    })?;
    let r = &sec.report;
    run.verdict(format!("gsc.p{p}.span"), r.verdict);
    run.verdict(format!("gsc.p{p}.minimal_rank"), r.ranks.iter().all(|&x| x == p + 1));
    run.verdict(
        format!("gsc.p{p}.span_monotone"),
        r.span_history.windows(2).all(|w| w[0] <= w[1]),
    );
    Ok(sec)
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextReport {
    pub context: ContextSummary,
    pub audit: LesAudit,
    pub consistency: ConsistencyReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionSection {
    pub p: usize,
    pub contexts: Vec<ContextReport>,
    /// dim of Σ Im γ over the contexts, and dim K_{p-1,1}(C).
    pub gamma_span: (usize, usize),
}

/// Projection from D (C with x, y glued) at K_{p,1}(D) for `pairs` random pairs.
pub fn projection(
    run: &mut Run,
    c: &NodalRationalCurve,
    ring: &CanonicalRing<PrimeField>,
    p: usize,
    pairs: usize,
    samples: usize,
) -> anyhow::Result<ProjectionSection> {
    let g = c.genus();
    if p == 0 || pairs == 0 {
        return Err(config_error("projection needs p ≥ 1 and at least one pair"));
    }
    if ring.qmax() < 3 {
        return Err(config_error("projection audits need --qmax 3"));
    }
    let seed = run.config().seed;
    let sec = run.stage(&format!("projection_p{p}"), |run| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ctxs = Vec::new();
        let mut contexts = Vec::new();
        for _ in 0..pairs {
            run.check_budget("projection")?;
            let ctx = ProjectionContext::random(c, ring, &mut rng, 20)?;
            let audit = les_audit(&ctx, p)?;
            let consistency = consistency_check(&ctx, p, samples, &mut rng)?;
            contexts.push(ContextReport {
                context: ctx.summary(),
                audit,
                consistency,
            });
            ctxs.push(ctx);
        }
        let gamma_span = gamma_span(&ctxs, p - 1)?;
        Ok(ProjectionSection {
            p,
            contexts,
            gamma_span,
        })
    })?;
    let voisin = g % 2 == 0 && p - 1 + 2 <= g / 2;
    let les = sec
        .contexts
        .iter()
        .all(|r| r.audit.injective_ok && r.audit.delta_surjective_ok);
    run.verdict(format!("projection.p{p}.les"), les);
    if voisin {
        run.verdict(
            format!("projection.p{p}.r4_zero"),
            sec.contexts.iter().all(|r| r.audit.r4 == 0),
        );
    }
    run.verdict(
        format!("projection.p{p}.modes_agree"),
        sec.contexts.iter().all(|r| r.consistency.ok),
    );
    Ok(sec)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScrollSection {
    pub exponents: Vec<usize>,
    pub strand: Vec<StrandRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strand_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<LawReport>,
}

pub fn scroll(run: &mut Run, exponents: &[usize]) -> anyhow::Result<ScrollSection> {
    if exponents.is_empty() || exponents.contains(&0) {
        return Err(config_error("scroll exponents must be positive"));
    }
    if exponents.windows(2).any(|w| w[0] < w[1]) {
        return Err(config_error("scroll exponents must be non-increasing"));
    }
    let field = PrimeField::new(run.config().koszul_prime).map_err(|e| config_error(e.to_string()))?;
    let seed = run.config().seed;
    let name = format!(
        "scroll_{}",
        exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("_")
    );
    let sec = run.stage(&name, |run| {
        let s = build_scroll(&field, exponents, 3)?;
        let (strand, strand_error) = match strand_table(&s, run.exec) {
            Ok(t) => (t, None),
            Err(e @ ScrollError::Strand { .. }) => (Vec::new(), Some(e.to_string())),
            Err(e) => return Err(e.into()),
        };
        let law = if s.f() >= 3 {
            Some(scroll_last_strand_law(&s, seed, run.exec)?)
        } else {
            None
        };
        Ok(ScrollSection {
            exponents: exponents.to_vec(),
            strand,
            strand_error,
            law,
        })
    })?;
    run.verdict(format!("{name}.strand"), sec.strand_error.is_none());
    if let Some(l) = &sec.law {
        run.verdict(format!("{name}.law"), l.span_ok && l.degree_ok);
    }
    Ok(sec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_lookup_and_csv() {
        let b = BettiSection {
            genus: 4,
            modulus: 7,
            table: vec![[0, 0, 1], [1, 1, 1]],
        };
        assert_eq!(b.get(1, 1), Some(1));
        assert_eq!(b.get(2, 1), None);
        assert_eq!(b.csv(), "p,q,dim\n0,0,1\n1,1,1\n");
    }
}
