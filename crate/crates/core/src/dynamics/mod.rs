//! Exact free evolution, pulse scenarios and light-cone diagnostics.

mod causality;
mod evolve;
mod pulse;

pub use causality::{
    auto_radius, causality_scan, min_image_distance, radial_profile, write_profile_csv, CausalityReport,
    CausalitySample, INITIAL_TAIL,
};
pub use evolve::{curl_form_residual, evolution_series, evolve, norm_drift, EvolutionPlan, EvolutionSample};
pub use pulse::{build_pulse, PulseConstruction, PulseScenario, SPECTRAL_TAIL};

use crate::fields::FieldError;
use crate::modes::ModeError;
use crate::quantum::QuantumError;

#[derive(Debug, thiserror::Error)]
pub enum DynamicsError {
    #[error("invalid evolution plan: {0}")]
    InvalidPlan(String),
    #[error("unresolvable pulse: {0}")]
    Unresolvable(String),
    #[error("light cone radius {radius} already reaches the box half-width {limit}")]
    ConeExitsBox { radius: f64, limit: f64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Mode(#[from] ModeError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}
