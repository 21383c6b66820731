use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::algebra::{c, Complex, ComplexVec3};
use crate::fields::spectral::curl;
use crate::fields::{GridSpec, PhysicalConstants, RSField, ScalarField, Vec3Field};
use crate::modes::{project_modes, ModeExpansion, ProjectionOptions};
use crate::sign::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PulseConstruction {
    /// `eps = +` modes only, doubled so the real part matches the real pulse.
    PositiveFrequencyOnly,
    /// Both frequency signs, paired so that `E` and `B` are real.
    RealConjugatePair,
}

/// Gaussian-enveloped transverse pulse
/// `E = curl(g m)`, `c B = curl(g m')` with
/// `g = exp(-|x - x0|^2 / 2 sigma^2) cos(k0 . (x - x0))`, periodized over the box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseScenario {
    pub sigma: f64,
    pub center: [f64; 3],
    pub carrier: [f64; 3],
    pub construction: PulseConstruction,
    #[serde(default = "default_m_e")]
    pub m_e: [f64; 3],
    #[serde(default = "default_m_b")]
    pub m_b: [f64; 3],
}

fn default_m_e() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

fn default_m_b() -> [f64; 3] {
    [1.0, 0.0, 0.0]
}

/// Envelope spectra above this fraction of the peak at the lattice edge are
/// considered unresolved.
pub const SPECTRAL_TAIL: f64 = 1e-12;

impl PulseScenario {
    pub fn new(sigma: f64, center: [f64; 3], construction: PulseConstruction) -> Self {
        Self {
            sigma,
            center,
            carrier: [0.0; 3],
            construction,
            m_e: default_m_e(),
            m_b: default_m_b(),
        }
    }

    /// Largest envelope-spectrum magnitude on the lattice edge, relative to
    /// its peak. The curl adds at most a factor `|k| sigma`, included here.
    pub fn spectral_tail(&self, grid: &GridSpec) -> f64 {
        let edge = PI / grid.dx();
        let k0 = self.carrier.iter().map(|x| x * x).sum::<f64>().sqrt();
        let gap = (edge - k0).max(0.0);
        (edge * self.sigma).max(1.0) * (-0.5 * (gap * self.sigma).powi(2)).exp()
    }

    pub fn validate(&self, grid: &GridSpec) -> Result<(), DynamicsError> {
        if !(self.sigma >= 2.0 * grid.dx()) {
            return Err(DynamicsError::Unresolvable(format!(
                "sigma {} is below two grid spacings ({})",
                self.sigma,
                2.0 * grid.dx()
            )));
        }
        if 8.0 * self.sigma > grid.length {
            return Err(DynamicsError::Unresolvable(format!(
                "sigma {} is too wide for box length {}",
                self.sigma, grid.length
            )));
        }
        let tail = self.spectral_tail(grid);
        if tail > SPECTRAL_TAIL {
            return Err(DynamicsError::Unresolvable(format!(
                "envelope spectrum at the lattice edge is {tail:e} of its peak"
            )));
        }
        Ok(())
    }

    fn envelope(&self, grid: &GridSpec) -> ScalarField {
        let (l, s2) = (grid.length, 2.0 * self.sigma * self.sigma);
        let (x0, k0) = (self.center, self.carrier);
        ScalarField::from_fn(*grid, 0.0, |x| {
            let mut g = 0.0;
            for a in -1..=1 {
                for b in -1..=1 {
                    for d in -1..=1 {
                        let r = [
                            x[0] - x0[0] + a as f64 * l,
                            x[1] - x0[1] + b as f64 * l,
                            x[2] - x0[2] + d as f64 * l,
                        ];
                        let r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
                        g += (-r2 / s2).exp() * (k0[0] * r[0] + k0[1] * r[1] + k0[2] * r[2]).cos();
                    }
                }
            }
            c(g, 0.0)
        })
    }

    /// The real field at `t = 0`.
    pub fn real_field(&self, grid: &GridSpec, k: &PhysicalConstants) -> Result<RSField, DynamicsError> {
        self.validate(grid)?;
        let g = self.envelope(grid);
        let along = |m: [f64; 3]| {
            let u = ComplexVec3::from_real(m);
            Vec3Field::from_components(g.scale(u[0]), g.scale(u[1]), g.scale(u[2]))
        };
        let e = curl(&along(self.m_e));
        let b = curl(&along(self.m_b)).scale(c(1.0 / k.c, 0.0));
        Ok(RSField::new(ScalarField::zeros(*grid, 0.0), e, b)?)
    }
}

/// Mode expansion of the pulse at `t = 0`.
pub fn build_pulse(s: &PulseScenario, grid: &GridSpec, k: &PhysicalConstants) -> Result<ModeExpansion, DynamicsError> {
    let f = s.real_field(grid, k)?;
    let all = project_modes(&f, k, ProjectionOptions::default())?;
    let mut plus = ModeExpansion::new(all.box_len, all.t)?;
    for (key, a) in all.modes.iter().filter(|(key, _)| key.eps == Sign::Plus) {
        plus.set(*key, *a)?;
    }
    Ok(match s.construction {
        PulseConstruction::RealConjugatePair => plus.with_real_partners()?,
        PulseConstruction::PositiveFrequencyOnly => {
            for a in plus.modes.values_mut() {
                *a *= Complex::new(2.0, 0.0);
            }
            plus
        }
    })
}
