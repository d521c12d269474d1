//! Report assembly, the wall-clock budget and the error kinds mapped to exit codes.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{Map, Value};
use syz_curve::{
    build_canonical, build_curve_attempt, canonical_ring, CanonicalRing, CurveError, CurveSpec, NodalRationalCurve,
};
use syz_linalg::{Execution, PrimeField};

/// Bad flags or an impossible configuration (exit 4).
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// The wall-clock budget ran out (exit 3).
#[derive(Debug)]
pub struct BudgetExceeded {
    pub stage: String,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "budget exceeded at stage {}", self.stage)
    }
}

impl std::error::Error for BudgetExceeded {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub genus: usize,
    pub seed: u64,
    pub koszul_prime: u32,
    pub search_prime: u32,
    pub qmax: usize,
    pub budget_secs: Option<u64>,
    pub sequential: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveEntry {
    pub role: String,
    pub spec: CurveSpec,
    /// Rejected draws before the curve passed its ring checks.
    pub attempts: u64,
    pub pairs: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub threads: Option<usize>,
    pub stages: Vec<(String, f64)>,
    pub total_secs: f64,
}

/// Everything needed to reproduce a run; `timing` is the only field that varies between runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Config,
    pub curves: Vec<CurveEntry>,
    pub results: Map<String, Value>,
    pub verdicts: BTreeMap<String, bool>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halted_at: Option<String>,
    pub timing: Timing,
}

pub struct Run {
    pub report: Report,
    pub exec: Execution,
    start: Instant,
    deadline: Option<Instant>,
}

impl Run {
    pub fn new(command: &str, config: Config, threads: Option<usize>) -> Self {
        let start = Instant::now();
        let deadline = config.budget_secs.map(|s| start + Duration::from_secs(s));
        let exec = if config.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        };
        Self {
            report: Report {
                tool: "syz",
                version: env!("CARGO_PKG_VERSION"),
                command: command.to_string(),
                config,
                curves: Vec::new(),
                results: Map::new(),
                verdicts: BTreeMap::new(),
                status: "running".into(),
                halted_at: None,
                timing: Timing {
                    threads,
                    ..Default::default()
                },
            },
            exec,
            start,
            deadline,
        }
    }

    pub fn config(&self) -> &Config {
        &self.report.config
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    pub fn check_budget(&self, stage: &str) -> anyhow::Result<()> {
        match self.deadline {
            Some(t) if Instant::now() >= t => Err(BudgetExceeded {
                stage: stage.to_string(),
            }
            .into()),
            _ => Ok(()),
        }
    }

    /// Runs one stage, records its output under `name` and its wall time.
    pub fn stage<T: Serialize>(
        &mut self,
        name: &str,
        body: impl FnOnce(&mut Self) -> anyhow::Result<T>,
    ) -> anyhow::Result<T> {
        self.check_budget(name)?;
        let t = Instant::now();
        let out = body(self)?;
        self.report
            .timing
            .stages
            .push((name.to_string(), t.elapsed().as_secs_f64()));
        self.report
            .results
            .insert(name.to_string(), serde_json::to_value(&out)?);
        self.check_budget(name)?;
        Ok(out)
    }

    pub fn verdict(&mut self, name: impl Into<String>, ok: bool) {
        self.report.verdicts.insert(name.into(), ok);
    }

    pub fn curve(
        &mut self,
        role: &str,
        spec: CurveSpec,
    ) -> anyhow::Result<(NodalRationalCurve, CanonicalRing<PrimeField>)> {
        let (c, ring, attempts) = build_canonical(&spec, self.config().qmax, 20)?;
        self.report.curves.push(CurveEntry {
            role: role.to_string(),
            spec,
            attempts,
            pairs: c.pairs().to_vec(),
        });
        Ok((c, ring))
    }

    /// Like [`Run::curve`], also rejecting draws for which `accept` fails.
    pub fn accepted_curve(
        &mut self,
        role: &str,
        spec: CurveSpec,
        accept: impl Fn(&NodalRationalCurve) -> bool,
    ) -> anyhow::Result<(NodalRationalCurve, CanonicalRing<PrimeField>)> {
        const ATTEMPTS: u64 = 20;
        for attempt in 0..ATTEMPTS {
            let c = match build_curve_attempt(&spec, attempt) {
                Ok(c) => c,
                Err(CurveError::RetriesExhausted(_)) | Err(CurveError::CanonicalDimension { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            let ring = match canonical_ring(&c, self.config().qmax) {
                Ok(r) => r,
                Err(CurveError::NotProjectivelyNormal { .. }) if spec.pairs.is_none() => continue,
                Err(e) => return Err(e.into()),
            };
            if !accept(&c) {
                if spec.pairs.is_some() {
                    anyhow::bail!("the curve in the spec file is not general");
                }
                continue;
            }
            self.report.curves.push(CurveEntry {
                role: role.to_string(),
                spec,
                attempts: attempt,
                pairs: c.pairs().to_vec(),
            });
            return Ok((c, ring));
        }
        anyhow::bail!("no general curve in {ATTEMPTS} draws")
    }

    pub fn finish(&mut self, halted: Option<&BudgetExceeded>) {
        self.report.timing.total_secs = self.start.elapsed().as_secs_f64();
        self.report.status = match halted {
            Some(b) => {
                self.report.halted_at = Some(b.stage.clone());
                "budget_exceeded".into()
            }
            None if self.report.verdicts.values().all(|&v| v) => "pass".into(),
            None => "fail".into(),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(budget: Option<u64>) -> Config {
        Config {
            genus: 6,
            seed: 1,
            koszul_prime: 10007,
            search_prime: 13,
            qmax: 3,
            budget_secs: budget,
            sequential: true,
        }
    }

    #[test]
    fn status_follows_the_verdicts() {
        let mut run = Run::new("t", cfg(None), None);
        run.verdict("a", true);
        run.finish(None);
        assert_eq!(run.report.status, "pass");
        run.verdict("b", false);
        run.finish(None);
        assert_eq!(run.report.status, "fail");
    }

    #[test]
    fn stages_stop_at_the_deadline() {
        let mut run = Run::new("t", cfg(Some(0)), None);
        let err = run.stage("x", |_| Ok(1)).unwrap_err();
        assert_eq!(err.downcast_ref::<BudgetExceeded>().unwrap().stage, "x");
        assert!(run.report.results.is_empty());
    }

    #[test]
    fn stage_output_is_recorded() {
        let mut run = Run::new("t", cfg(None), None);
        run.stage("x", |_| Ok(vec![1, 2])).unwrap();
        assert_eq!(run.report.results["x"], serde_json::json!([1, 2]));
        assert_eq!(run.report.timing.stages[0].0, "x");
    }
}
