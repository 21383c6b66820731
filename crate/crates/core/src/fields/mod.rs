//! Fields on a periodic cubic grid: spectral calculus, potentials, the RS
//! field, Maxwell residuals, tensors, Lagrangians and currents.

pub mod constants;
pub mod current;
pub mod grid;
pub mod io;
pub mod maxwell;
pub mod potential;
pub mod rs;
pub mod spectral;
pub mod tensor;

pub use constants::PhysicalConstants;
pub use current::{continuity_residual, continuity_source, noether_current, CurrentKind, FourCurrent, LabeledPotential, NoetherKind};
pub use grid::{GridSpec, ScalarField, Vec3Field};
pub use io::{FieldKind, Snapshot};
pub use maxwell::{maxwell_residual_rs, maxwell_split, wave_residual, ClassicalResiduals, GradedResidual};
pub use potential::{gauge_transform, FourPotential, GaugeFunction, PotentialSlice, PotentialWave, ScalarWave, TimeBacking};
pub use rs::{compute_rs, RSField, RsRate};
pub use tensor::{
    conjugate_momentum, derivative_tensor, faraday, faraday_from_rs, lagrange_residual, lagrangian_density,
    LagrangianInputs, LagrangianKind, MomentumKind, Rank2Field,
};

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("wave vector index {0:?} is not resolved by the grid")]
    OffLattice([i64; 3]),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("time derivative unavailable")]
    MissingTimeDerivative,
    #[error("{0} needs a mode-backed potential")]
    NeedsModeBacking(&'static str),
    #[error("missing input: {0}")]
    MissingInput(&'static str),
    #[error("a component has no frequency-sign label")]
    UnresolvedFrequencySign,
    #[error("need at least 3 time samples, got {0}")]
    TooFewTimeSamples(usize),
    #[error("malformed field file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
