//! Configuration, verification suites and simulations behind the `rsphoton` binary.

pub mod config;
pub mod report;
pub mod simulate;
pub mod suites;

use std::time::Duration;

use config::{ConfigError, RunConfig};
use report::VerifyReport;
use suites::Suite;

/// Tolerance names accepted by `simulate`.
pub const SIMULATE_CHECKS: &[&str] = &["simulate.norm_drift", "simulate.residual"];

pub fn known_checks() -> Vec<&'static str> {
    let mut v = suites::check_names();
    v.extend_from_slice(SIMULATE_CHECKS);
    v
}

/// Runs `suite` and returns the report with the wall time of each member.
pub fn verify(suite: Suite, cfg: &RunConfig) -> Result<(VerifyReport, Vec<(Suite, Duration)>), ConfigError> {
    cfg.validate(&known_checks())?;
    let mut results = Vec::new();
    let mut times = Vec::new();
    for s in suite.members() {
        let start = std::time::Instant::now();
        results.push(suites::run_suite(s, cfg)?);
        times.push((s, start.elapsed()));
    }
    Ok((VerifyReport::new(cfg.seed, results), times))
}
