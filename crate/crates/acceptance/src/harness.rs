use std::time::{Duration, Instant};

/// What a criterion body reports: a one-line summary and whether it held.
pub struct Outcome {
    pub ok: bool,
    pub detail: String,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Self {
            ok: true,
            detail: detail.into(),
        }
    }

    pub fn check(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
        }
    }
}

/// Runs a criterion, prints one status line and panics if it failed or overran `limit`.
pub fn criterion(number: usize, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) {
    let t = Instant::now();
    let out = body();
    let elapsed = t.elapsed();
    let in_time = elapsed <= limit;
    let status = if out.ok && in_time { "PASS" } else { "FAIL" };
    println!(
        "criterion {number} [{status}] {name}: {} ({:.1}s of {:.0}s)",
        out.detail,
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(out.ok, "criterion {number} ({name}) failed: {}", out.detail);
    assert!(in_time, "criterion {number} ({name}) took {elapsed:?}, limit {limit:?}");
}
