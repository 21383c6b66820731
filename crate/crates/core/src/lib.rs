//! Photon wave mechanics in the complexified algebra of physical space.

pub mod algebra;
pub mod dynamics;
pub mod fields;
pub mod modes;
pub mod quantum;
pub mod sign;

pub use sign::Sign;
