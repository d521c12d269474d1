//! `syz`: builds curves, runs the syzygy suites and writes JSON reports.
//!
//! Exit codes: 0 all verdicts pass, 2 some verdict failed, 3 budget exceeded
//! (a partial report is still written), 4 configuration error, 1 other errors.

mod report;
mod stages;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use syz_curve::CurveSpec;
use syz_linalg::{next_prime, par::init_pool_from_env, PrimeField};

use report::{config_error, BudgetExceeded, Config, ConfigError, Run};

#[derive(Parser, Debug)]
#[command(
    name = "syz",
    version,
    about = "Syzygies of canonical nodal curves over finite fields"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, global = true, default_value_t = 6)]
    genus: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Field for Betti tables, projection and scrolls.
    #[arg(long, global = true, default_value_t = 10007)]
    koszul_prime: u32,
    /// Field for pencil searches and span tests; defaults to the smallest prime above 2g.
    #[arg(long, global = true)]
    search_prime: Option<u32>,
    #[arg(long, global = true)]
    budget_secs: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 3)]
    qmax: usize,
    /// Curve spec file (JSON); overrides --genus and the primes for the curve it describes.
    #[arg(long, global = true)]
    curve: Option<PathBuf>,
    /// Run every stage on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Curve build, Betti table, pencils, span tests, projection audit and scroll table.
    Suite {
        #[arg(long, default_value_t = 2)]
        pairs: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Koszul Betti table of the canonical ring.
    Betti {
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Pencils of a given degree over the search field.
    Pencils {
        #[arg(long)]
        degree: usize,
        /// Largest number of candidates tried; exhaustive search when all fit.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Span test of minimal-rank syzygies; all p in 1..g/2 when --p is absent.
    Gsc {
        #[arg(long)]
        p: Option<usize>,
        /// Members per pencil (default p + 2).
        #[arg(long)]
        members: Option<usize>,
    },
    /// Strand table and last-strand law of a rational normal scroll.
    Scroll {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<usize>,
    },
    /// Projection K_{p,1}(D) → K_{p-1,1}(C) at random pairs of points.
    Project {
        /// Degree on D (default g/2 − 1).
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = 2)]
        pairs: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Suite { .. } => "suite",
            Cmd::Betti { .. } => "betti",
            Cmd::Pencils { .. } => "pencils",
            Cmd::Gsc { .. } => "gsc",
            Cmd::Scroll { .. } => "scroll",
            Cmd::Project { .. } => "project",
        }
    }
}

fn load_spec(path: &PathBuf) -> anyhow::Result<CurveSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| config_error(format!("curve spec {}: {e}", path.display())))
}

fn config(common: &Common, spec: Option<&CurveSpec>) -> anyhow::Result<Config> {
    let genus = spec.map_or(common.genus, |s| s.genus);
    if genus < 2 {
        return Err(config_error(format!("genus must be at least 2, got {genus}")));
    }
    if common.qmax < 2 {
        return Err(config_error("--qmax must be at least 2"));
    }
    let search_prime = common.search_prime.unwrap_or_else(|| next_prime(2 * genus as u32 + 1));
    for p in [common.koszul_prime, search_prime] {
        PrimeField::new(p).map_err(|e| config_error(format!("{p}: {e}")))?;
    }
    Ok(Config {
        genus,
        seed: common.seed,
        koszul_prime: common.koszul_prime,
        search_prime,
        qmax: common.qmax,
        budget_secs: common.budget_secs,
        sequential: common.sequential,
    })
}

fn koszul_spec(run: &Run, file: Option<&CurveSpec>) -> CurveSpec {
    let c = run.config();
    file.cloned()
        .unwrap_or_else(|| CurveSpec::random(c.genus, c.koszul_prime, c.seed))
}

fn search_spec(run: &Run, file: Option<&CurveSpec>) -> CurveSpec {
    let c = run.config();
    file.cloned()
        .unwrap_or_else(|| CurveSpec::random(c.genus, c.search_prime, c.seed))
}

/// The search curve, redrawn until W^1_{k+1} is reduced.
fn general_search_curve(
    run: &mut Run,
    file: Option<&CurveSpec>,
) -> anyhow::Result<(syz_curve::NodalRationalCurve, syz_curve::CanonicalRing<PrimeField>)> {
    let spec = search_spec(run, file);
    let (seed, d) = (run.config().seed, spec.genus / 2 + 1);
    run.accepted_curve("search", spec, |c| syz_pencil::closure_count(c, d, seed).is_ok())
}

fn dispatch(run: &mut Run, cmd: &Cmd, file: Option<&CurveSpec>) -> anyhow::Result<Option<stages::BettiSection>> {
    let g = run.config().genus;
    match cmd {
        Cmd::Suite { pairs, samples } => {
            if g % 2 != 0 || g < 4 {
                return Err(config_error(format!("the suite needs even genus g = 2k ≥ 4, got {g}")));
            }
            let k = g / 2;
            let (c, ring) = run.curve("koszul", koszul_spec(run, file))?;
            stages::betti(run, &ring)?;
            let (cs, rings) = general_search_curve(run, file)?;
            stages::gonality_stage(run, &cs)?;
            stages::pencils(run, &cs, k + 1, 10_000_000)?;
            for p in 1..k {
                stages::gsc(run, &cs, &rings, p, None)?;
            }
            if k >= 2 {
                stages::projection(run, &c, &ring, k - 1, *pairs, *samples)?;
            }
            stages::scroll(run, &vec![1; k])?;
            Ok(None)
        }
        Cmd::Betti { .. } => {
            let (_, ring) = run.curve("koszul", koszul_spec(run, file))?;
            Ok(Some(stages::betti(run, &ring)?))
        }
        Cmd::Pencils { degree, budget } => {
            let (c, _) = run.curve("search", search_spec(run, file))?;
            stages::pencils(run, &c, *degree, *budget)?;
            Ok(None)
        }
        Cmd::Gsc { p, members } => {
            if g % 2 != 0 {
                return Err(config_error(format!("span test needs even genus, got {g}")));
            }
            let (c, ring) = general_search_curve(run, file)?;
            let ps: Vec<usize> = match p {
                Some(p) => vec![*p],
                None => (1..g / 2).collect(),
            };
            for p in ps {
                stages::gsc(run, &c, &ring, p, *members)?;
            }
            Ok(None)
        }
        Cmd::Scroll { exponents } => {
            stages::scroll(run, exponents)?;
            Ok(None)
        }
        Cmd::Project { p, pairs, samples } => {
            let p = p.unwrap_or((g / 2).saturating_sub(1).max(1));
            let (c, ring) = run.curve("koszul", koszul_spec(run, file))?;
            stages::projection(run, &c, &ring, p, *pairs, *samples)?;
            Ok(None)
        }
    }
}

fn emit(run: &Run, path: Option<&PathBuf>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(&run.report)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = init_pool_from_env("SYZ_THREADS");
    let spec = match cli.common.curve.as_ref().map(load_spec).transpose() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let cfg = match config(&cli.common, spec.as_ref()) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let mut run = Run::new(cli.cmd.name(), cfg, threads);
    let (betti, halted) = match dispatch(&mut run, &cli.cmd, spec.as_ref()) {
        Ok(b) => (b, None),
        Err(e) => match e.downcast::<BudgetExceeded>() {
            Ok(b) => (None, Some(b)),
            Err(e) => return fail(e),
        },
    };
    run.finish(halted.as_ref());
    if let (Some(betti), Cmd::Betti { csv: Some(path) }) = (&betti, &cli.cmd) {
        if let Err(e) = std::fs::write(path, betti.csv()) {
            return fail(anyhow::anyhow!("writing {}: {e}", path.display()));
        }
    }
    if let Err(e) = emit(&run, cli.common.report.as_ref()) {
        return fail(e);
    }
    match run.report.status.as_str() {
        "pass" => ExitCode::SUCCESS,
        "budget_exceeded" => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn fail(e: anyhow::Error) -> ExitCode {
    eprintln!("error: {e:#}");
    if e.chain().any(|c| c.is::<ConfigError>()) {
        ExitCode::from(4)
    } else {
        ExitCode::from(1)
    }
}
