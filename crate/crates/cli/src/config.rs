use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rsphoton::dynamics::PulseConstruction;
use rsphoton::fields::{GridSpec, PhysicalConstants};
use rsphoton::modes::ModeRecord;
use rsphoton::quantum::HarnessConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Natural,
    Si,
}

impl Units {
    pub fn constants(self) -> PhysicalConstants {
        match self {
            Units::Natural => PhysicalConstants::NATURAL,
            Units::Si => PhysicalConstants::SI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { n: 32, length: 1.0 }
    }
}

/// Snapshot schedule shared by both simulations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub dt: f64,
    pub steps: usize,
    #[serde(default = "one")]
    pub stride: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModesConfig {
    #[serde(default)]
    pub t: f64,
    pub modes: Vec<ModeRecord>,
    pub schedule: Schedule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    /// Envelope width in grid spacings.
    pub sigma_cells: f64,
    #[serde(default)]
    pub center: Option<[f64; 3]>,
    #[serde(default)]
    pub carrier: [f64; 3],
    pub construction: PulseConstruction,
    pub schedule: Schedule,
    #[serde(default = "causality_tolerance")]
    pub tolerance: f64,
    /// Cone radius at `t = 0`; chosen from the real pulse when absent.
    #[serde(default)]
    pub r0: Option<f64>,
    #[serde(default = "profile_bins")]
    pub profile_bins: usize,
}

fn causality_tolerance() -> f64 {
    1e-6
}

fn profile_bins() -> usize {
    64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub units: Units,
    pub grid: GridConfig,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    /// Per-check tolerance overrides, keyed by check name.
    pub tolerances: BTreeMap<String, f64>,
    /// Binary field snapshot checked by the maxwell suite.
    pub fixture: Option<PathBuf>,
    pub harness: Option<HarnessConfig>,
    pub modes: Option<ModesConfig>,
    pub pulse: Option<PulseConfig>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            units: Units::Natural,
            grid: GridConfig::default(),
            seed: 42,
            output_dir: None,
            tolerances: BTreeMap::new(),
            fixture: None,
            harness: None,
            modes: None,
            pulse: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let cfg: RunConfig = serde_json::from_str(&text)?;
        // relative fixture paths are taken from the config's directory
        let mut cfg = cfg;
        if let (Some(f), Some(dir)) = (&cfg.fixture, path.parent()) {
            if f.is_relative() {
                cfg.fixture = Some(dir.join(f));
            }
        }
        Ok(cfg)
    }

    pub fn grid(&self) -> Result<GridSpec, ConfigError> {
        let g = GridSpec::new(self.grid.n, self.grid.length).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if g.n < 8 {
            return Err(ConfigError::Invalid(format!("grid.n must be at least 8, got {}", g.n)));
        }
        Ok(g)
    }

    /// Checks everything that does not need a suite to run.
    pub fn validate(&self, known_checks: &[&str]) -> Result<(), ConfigError> {
        self.grid()?;
        for (name, tol) in &self.tolerances {
            if !known_checks.contains(&name.as_str()) {
                return Err(ConfigError::Invalid(format!("unknown check '{name}' in tolerances")));
            }
            if !(*tol >= 0.0 && tol.is_finite()) {
                return Err(ConfigError::Invalid(format!("tolerance for '{name}' must be finite and non-negative")));
            }
        }
        for s in [self.modes.as_ref().map(|m| m.schedule), self.pulse.as_ref().map(|p| p.schedule)]
            .into_iter()
            .flatten()
        {
            if !(s.dt > 0.0 && s.dt.is_finite()) || s.steps == 0 || s.stride == 0 {
                return Err(ConfigError::Invalid("schedule needs dt > 0, steps >= 1, stride >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}
