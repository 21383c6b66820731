//! Helicity plane waves, mode expansions and grid projections.
//!
//! Mode amplitudes are discrete one-photon amplitudes `alpha`: a single mode
//! with `|alpha| = 1` carries one photon in the box.

mod expansion;
mod plane;

pub use expansion::{
    expand_rs, labeled_potentials, one_photon_potential, project_modes, real_partner, resolved_potentials, ModeExpansion, ModeKey,
    ModeRecord, ProjectionOptions,
};
pub use plane::{
    helicity_vector, one_photon_field_amplitude, one_photon_potential_amplitude, plane_wave_b, plane_wave_e,
    plane_wave_f, HelicityTriad, PlaneWaveMode,
};

use crate::fields::FieldError;

#[derive(Debug, thiserror::Error)]
pub enum ModeError {
    #[error("direction vector is zero")]
    ZeroVector,
    #[error("lattice index {0:?} is zero or not resolved by the grid")]
    OffLattice([i64; 3]),
    #[error("box length must be positive, got {0}")]
    InvalidBox(f64),
    #[error("expansion box length {expansion} does not match grid length {grid}")]
    BoxMismatch { expansion: f64, grid: f64 },
    #[error("duplicate mode {0:?}")]
    DuplicateKey(ModeKey),
    #[error("field is not a free transverse field: {what} at lattice index {bin:?} is {fraction:e} of the peak")]
    NotFree { what: &'static str, bin: [i64; 3], fraction: f64 },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
}
