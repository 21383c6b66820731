use crate::algebra::{c, Complex, ComplexVec3, Multivector, J};
use crate::fields::PhysicalConstants;
use crate::sign::Sign;

use super::ModeError;

/// Orthonormal triad `{e_theta, e_phi, k_hat}` from spherical angles of `k_hat`.
///
/// At the poles `phi = 0`, so `e_theta = +-e1` and `e_phi = e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityTriad {
    pub k_hat: [f64; 3],
    pub e_theta: [f64; 3],
    pub e_phi: [f64; 3],
}

impl HelicityTriad {
    /// Accepts any nonzero direction; it is normalized first.
    pub fn new(k: [f64; 3]) -> Result<Self, ModeError> {
        let norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(ModeError::ZeroVector);
        }
        let k_hat = k.map(|x| x / norm);
        let rho = k_hat[0].hypot(k_hat[1]);
        let (cos_t, sin_t) = (k_hat[2], rho);
        let (cos_p, sin_p) = if rho == 0.0 {
            (1.0, 0.0)
        } else {
            (k_hat[0] / rho, k_hat[1] / rho)
        };
        Ok(Self {
            k_hat,
            e_theta: [cos_t * cos_p, cos_t * sin_p, -sin_t],
            e_phi: [-sin_p, cos_p, 0.0],
        })
    }

    /// `e_lambda = (e_theta + j lambda e_phi) / sqrt 2`.
    pub fn polarization(&self, lam: Sign) -> ComplexVec3 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let l = lam.value();
        ComplexVec3::new(
            c(self.e_theta[0] * s, l * self.e_phi[0] * s),
            c(self.e_theta[1] * s, l * self.e_phi[1] * s),
            c(self.e_theta[2] * s, l * self.e_phi[2] * s),
        )
    }
}

pub fn helicity_vector(k_hat: [f64; 3], lam: Sign) -> Result<ComplexVec3, ModeError> {
    Ok(HelicityTriad::new(k_hat)?.polarization(lam))
}

/// Plane wave `a e_lambda(k_hat) e^{-j eps omega t + j k.x}` for `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveMode {
    pub k: [f64; 3],
    pub eps: Sign,
    pub lam: Sign,
    pub a: Complex,
}

impl PlaneWaveMode {
    pub fn new(k: [f64; 3], eps: Sign, lam: Sign, a: Complex) -> Result<Self, ModeError> {
        if k == [0.0; 3] {
            return Err(ModeError::ZeroVector);
        }
        Ok(Self { k, eps, lam, a })
    }

    pub fn wavenumber(&self) -> f64 {
        (self.k[0] * self.k[0] + self.k[1] * self.k[1] + self.k[2] * self.k[2]).sqrt()
    }

    /// `omega_k = c |k|`, always positive.
    pub fn omega(&self, k: &PhysicalConstants) -> f64 {
        k.c * self.wavenumber()
    }

    pub fn polarization(&self) -> ComplexVec3 {
        HelicityTriad::new(self.k)
            .expect("mode wave vectors are nonzero")
            .polarization(self.lam)
    }

    fn phase(&self, x: [f64; 3], t: f64, k: &PhysicalConstants) -> Complex {
        let kx = self.k[0] * x[0] + self.k[1] * x[1] + self.k[2] * x[2];
        Complex::from_polar(1.0, kx - self.eps.value() * self.omega(k) * t)
    }
}

pub fn plane_wave_e(m: &PlaneWaveMode, x: [f64; 3], t: f64, k: &PhysicalConstants) -> ComplexVec3 {
    m.polarization().scale(m.a * m.phase(x, t, k))
}

/// `B` from Faraday's law: `c B = -j eps lambda E`.
pub fn plane_wave_b(m: &PlaneWaveMode, x: [f64; 3], t: f64, k: &PhysicalConstants) -> ComplexVec3 {
    let s = -J * (m.eps.value() * m.lam.value() / k.c);
    plane_wave_e(m, x, t, k).scale(s)
}

/// `F = E + i c B = (1 - i j eps lambda) E`.
pub fn plane_wave_f(m: &PlaneWaveMode, x: [f64; 3], t: f64, k: &PhysicalConstants) -> Multivector {
    let e = plane_wave_e(m, x, t, k);
    let cb = plane_wave_b(m, x, t, k).scale(c(k.c, 0.0));
    Multivector::vector(&e) + Multivector::bivector(&cb)
}

/// Electric-field amplitude of one photon in a box of volume `volume`:
/// `E = -eps sqrt(hbar omega / (2 eps0 V))` per unit discrete amplitude.
pub fn one_photon_field_amplitude(omega: f64, eps: Sign, volume: f64, k: &PhysicalConstants) -> f64 {
    -eps.value() * (k.hbar * omega / (2.0 * k.eps0 * volume)).sqrt()
}

/// Potential amplitude matching [`one_photon_field_amplitude`]:
/// `A = j sqrt(hbar / (2 eps0 omega V))`.
pub fn one_photon_potential_amplitude(omega: f64, volume: f64, k: &PhysicalConstants) -> Complex {
    J * (k.hbar / (2.0 * k.eps0 * omega * volume)).sqrt()
}
