//! Named verification suites. Each returns its checks in a fixed order.

pub mod algebra;
pub mod maxwell;
pub mod noether;
pub mod quantum;
mod util;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, RunConfig};
use crate::report::SuiteResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra = 1,
    Maxwell = 2,
    Noether = 3,
    Quantum = 4,
    All = 5,
}

impl Suite {
    pub const EACH: [Suite; 4] = [Suite::Algebra, Suite::Maxwell, Suite::Noether, Suite::Quantum];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Maxwell => "maxwell",
            Suite::Noether => "noether",
            Suite::Quantum => "quantum",
            Suite::All => "all",
        }
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::EACH.to_vec(),
            s => vec![s],
        }
    }
}

pub fn check_names() -> Vec<&'static str> {
    [algebra::CHECKS, maxwell::CHECKS, noether::CHECKS, quantum::CHECKS].concat()
}

/// Runs one suite (not `All`).
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteResult, ConfigError> {
    let g = cfg.grid()?;
    let checks = match suite {
        Suite::Algebra => algebra::run(cfg),
        Suite::Maxwell => maxwell::run(cfg, g),
        Suite::Noether => noether::run(cfg, g),
        Suite::Quantum => quantum::run(cfg, g),
        Suite::All => return Err(ConfigError::Invalid("'all' is not a single suite".into())),
    };
    Ok(SuiteResult::new(suite.name(), checks))
}
