use serde::{Deserialize, Serialize};

/// Speed of light, vacuum permittivity and reduced Planck constant.
///
/// `mu0` and `z0` are derived so the set stays self-consistent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// m/s
    pub c: f64,
    /// F/m
    pub eps0: f64,
    /// J s
    pub hbar: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants {
        c: 299_792_458.0,
        eps0: 8.854_187_812_8e-12,
        hbar: 1.054_571_817e-34,
    };

    pub const NATURAL: PhysicalConstants = PhysicalConstants {
        c: 1.0,
        eps0: 1.0,
        hbar: 1.0,
    };

    pub fn mu0(&self) -> f64 {
        1.0 / (self.eps0 * self.c * self.c)
    }

    /// Impedance of vacuum.
    pub fn z0(&self) -> f64 {
        (self.mu0() / self.eps0).sqrt()
    }

    pub fn is_valid(&self) -> bool {
        [self.c, self.eps0, self.hbar]
            .iter()
            .all(|x| x.is_finite() && *x > 0.0)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::NATURAL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants() {
        let si = PhysicalConstants::SI;
        assert!((si.z0() - 376.730_313).abs() < 1e-3);
        assert!((si.z0() * si.c - 1.0 / si.eps0).abs() / (1.0 / si.eps0) < 1e-12);
        let nat = PhysicalConstants::NATURAL;
        assert_eq!(nat.mu0(), 1.0);
        assert_eq!(nat.z0(), 1.0);
    }
}
