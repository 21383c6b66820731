//! `simulate modes` and `simulate pulse`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rsphoton::dynamics::{
    auto_radius, build_pulse, causality_scan, evolution_series, evolve, radial_profile, write_profile_csv,
    CausalityReport, DynamicsError, EvolutionPlan, EvolutionSample, PulseConstruction, PulseScenario, INITIAL_TAIL,
};
use rsphoton::fields::{GridSpec, Snapshot};
use rsphoton::modes::{expand_rs, ModeExpansion};
use serde::Serialize;

use crate::config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum SimulateError {
    /// Bad or unresolvable scenario; maps to exit code 2.
    #[error("{0}")]
    Scenario(String),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Dynamics(DynamicsError),
}

impl From<DynamicsError> for SimulateError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Unresolvable(_) | DynamicsError::ConeExitsBox { .. } | DynamicsError::InvalidPlan(_) => {
                SimulateError::Scenario(e.to_string())
            }
            other => SimulateError::Dynamics(other),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModesSummary {
    pub samples: Vec<EvolutionSample>,
    pub norm_drift: f64,
    pub energy_drift: f64,
    pub max_residual: f64,
    pub norm_tolerance: f64,
    pub residual_tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PulseSummary {
    pub construction: PulseConstruction,
    pub sigma: f64,
    pub center: [f64; 3],
    pub causality: CausalityReport,
    /// Present for positive-frequency pulses, whose tail is expected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finding: Option<String>,
    pub pass: bool,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), SimulateError> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value).map_err(std::io::Error::from)?;
    writeln!(w)?;
    Ok(())
}

fn write_snapshots(out: &Path, prefix: &str, snaps: &[ModeExpansion], grid: &GridSpec, cfg: &RunConfig) -> Result<(), SimulateError> {
    let k = cfg.units.constants();
    for (i, s) in snaps.iter().enumerate() {
        let f = expand_rs(s, grid, &k).map_err(|e| SimulateError::Scenario(e.to_string()))?;
        let w = BufWriter::new(File::create(out.join(format!("{prefix}_{i:04}.rsf")))?);
        Snapshot::from_rs(&f).write(w).map_err(|e| SimulateError::Scenario(e.to_string()))?;
    }
    Ok(())
}

fn rel_spread(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let first = values.clone().next().unwrap_or(0.0);
    values.map(|v| (v - first).abs() / first.abs().max(f64::MIN_POSITIVE)).fold(0.0, f64::max)
}

pub fn simulate_modes(cfg: &RunConfig, out: &Path) -> Result<ModesSummary, SimulateError> {
    let grid = cfg.grid().map_err(|e| SimulateError::Scenario(e.to_string()))?;
    let m = cfg.modes.as_ref().ok_or_else(|| SimulateError::Scenario("config has no 'modes' section".into()))?;
    let exp = ModeExpansion::from_records(grid.length, m.t, &m.modes).map_err(|e| SimulateError::Scenario(e.to_string()))?;
    if let Some(bad) = exp.modes.keys().find(|key| !grid.resolves(key.n)) {
        return Err(SimulateError::Scenario(format!("mode {:?} is not resolved by a {}^3 grid", bad.n, grid.n)));
    }
    let plan = EvolutionPlan::new(exp, m.t, m.schedule.dt, m.schedule.steps, m.schedule.stride)?;
    let k = cfg.units.constants();
    let samples = evolution_series(&plan, &grid, &k)?;
    let (nt, rt) = (cfg.tolerance("simulate.norm_drift", 1e-12), cfg.tolerance("simulate.residual", 1e-10));
    let norm_drift = rel_spread(samples.iter().map(|s| s.norm));
    let energy_drift = rel_spread(samples.iter().map(|s| s.energy));
    let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    write_snapshots(out, "modes", &evolve(&plan, &k)?, &grid, cfg)?;
    let summary = ModesSummary {
        pass: norm_drift <= nt && max_residual <= rt,
        samples,
        norm_drift,
        energy_drift,
        max_residual,
        norm_tolerance: nt,
        residual_tolerance: rt,
    };
    write_json(&out.join("modes_series.json"), &summary)?;
    Ok(summary)
}

pub fn simulate_pulse(cfg: &RunConfig, out: &Path) -> Result<PulseSummary, SimulateError> {
    let grid = cfg.grid().map_err(|e| SimulateError::Scenario(e.to_string()))?;
    let p = cfg.pulse.as_ref().ok_or_else(|| SimulateError::Scenario("config has no 'pulse' section".into()))?;
    let k = cfg.units.constants();
    let center = p.center.unwrap_or([grid.length / 2.0; 3]);
    let mut scenario = PulseScenario::new(p.sigma_cells * grid.dx(), center, p.construction);
    scenario.carrier = p.carrier;
    let exp = build_pulse(&scenario, &grid, &k)?;
    // the cone starts where the real pulse has its initial tail
    let r0 = match p.r0 {
        Some(r) => r,
        None => auto_radius(&scenario.real_field(&grid, &k)?, center, INITIAL_TAIL, &k),
    };
    let plan = EvolutionPlan::new(exp, 0.0, p.schedule.dt, p.schedule.steps, p.schedule.stride)?;
    let snaps = evolve(&plan, &k)?;
    let causality = causality_scan(&snaps, &grid, center, Some(r0), p.tolerance, &k)?;
    for (name, snap) in [("profile_initial.csv", snaps.first()), ("profile_final.csv", snaps.last())] {
        let f = expand_rs(snap.expect("at least one step"), &grid, &k).map_err(|e| SimulateError::Scenario(e.to_string()))?;
        write_profile_csv(&radial_profile(&f, center, p.profile_bins, &k), BufWriter::new(File::create(out.join(name))?))?;
    }
    write_snapshots(out, "pulse", &snaps, &grid, cfg)?;
    let (finding, pass) = match p.construction {
        PulseConstruction::RealConjugatePair => (None, causality.pass && causality.max_imaginary < 1e-12),
        PulseConstruction::PositiveFrequencyOnly => (
            Some(format!(
                "positive-frequency pulse: exterior fraction up to {:e} beyond the light cone (nonlocal tail, expected)",
                causality.max_exterior
            )),
            true,
        ),
    };
    let summary = PulseSummary {
        construction: p.construction,
        sigma: scenario.sigma,
        center,
        causality,
        finding,
        pass,
    };
    write_json(&out.join("causality.json"), &summary)?;
    Ok(summary)
}
