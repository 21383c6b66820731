//! Scalar products, the momentum-space operator suite and the commutator
//! harness.

mod commutator;
mod ops;
mod product;
mod spin;

pub use commutator::{
    commutator_check, default_packets, standard_cases, CommutatorCase, CommutatorReport, GaussianPacket,
    HarnessConfig,
};
pub use ops::{
    hamiltonian_apply_modes, hamiltonian_apply_rs, KDomain, Operator, Representation, Stencil, VectorState,
};
pub use product::{scalar_product_k, scalar_product_x};
pub use spin::{commutator as matrix_commutator, is_hermitian, mat_mul, mat_vec, Matrix3, SpinMatrices};

use crate::fields::FieldError;
use crate::modes::ModeError;

#[derive(Debug, thiserror::Error)]
pub enum QuantumError {
    #[error("states live on different lattices (box {0} vs {1})")]
    LatticeMismatch(f64, f64),
    #[error("operator undefined at k = {0:?}")]
    ExcludedPoint([f64; 3]),
    #[error("evaluation at k = {0:?} leaves the state's lattice")]
    BoundaryContact([f64; 3]),
    #[error("test state touches the lattice boundary")]
    StateTouchesBoundary,
    #[error("test state touches k = 0")]
    StateTouchesOrigin,
    #[error("invalid k-derivative step {0}")]
    InvalidStep(f64),
    #[error("a component has no frequency-sign or helicity label")]
    UnresolvedFrequencySign,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Mode(#[from] ModeError),
}
