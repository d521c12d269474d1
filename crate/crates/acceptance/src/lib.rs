//! Independent oracles and the pass/fail harness used by the acceptance tests.

pub mod harness;
pub mod oracle;

pub use harness::{criterion, Outcome};
