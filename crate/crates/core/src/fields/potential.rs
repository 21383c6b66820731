use serde::{Deserialize, Serialize};

use super::grid::{synthesize, GridSpec, ScalarField, Vec3Field};
use super::FieldError;
use crate::algebra::{c, Complex, ComplexVec3, J};

/// One analytic component `(phi/c, A) e^{-j omega t + j k.x}` of a potential,
/// with `k` on the reciprocal lattice of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialWave {
    pub m: [i64; 3],
    /// Signed angular frequency; the time factor is `e^{-j omega t}`.
    pub omega: f64,
    pub phi_over_c: Complex,
    pub a: ComplexVec3,
}

impl PotentialWave {
    fn time_factor(&self, t: f64) -> Complex {
        Complex::from_polar(1.0, -self.omega * t)
    }

    fn differentiated(&self) -> Self {
        let f = -J * self.omega;
        Self {
            phi_over_c: self.phi_over_c * f,
            a: self.a.scale(f),
            ..*self
        }
    }
}

/// Potential values at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSlice {
    pub phi_over_c: ScalarField,
    pub a: Vec3Field,
}

impl PotentialSlice {
    pub fn zeros(grid: GridSpec, t: f64) -> Self {
        Self {
            phi_over_c: ScalarField::zeros(grid, t),
            a: Vec3Field::zeros(grid, t),
        }
    }

    fn lincomb(&self, sa: f64, other: &Self, sb: f64) -> Self {
        Self {
            phi_over_c: self.phi_over_c.zip_with(&other.phi_over_c, |x, y| x * sa + y * sb),
            a: self.a.zip_with(&other.a, |x, y| x * sa + y * sb),
        }
    }
}

/// How a potential knows its own time dependence.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeBacking {
    /// Analytic wave list; every time derivative is exact.
    Modes(Vec<PotentialWave>),
    /// Grid slices at `[t, t+dt]` (forward difference) or `[t-dt, t, t+dt]`
    /// (central difference). Only the first time derivative is available.
    Samples { dt: f64, slices: Vec<PotentialSlice> },
}

/// Four-potential `A = phi/c + A` on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FourPotential {
    pub grid: GridSpec,
    pub t: f64,
    pub backing: TimeBacking,
}

fn render_waves<'a>(
    grid: &GridSpec,
    t: f64,
    waves: impl Iterator<Item = &'a PotentialWave>,
) -> PotentialSlice {
    let mut coeff = vec![vec![c(0.0, 0.0); grid.len()]; 4];
    for w in waves {
        let idx = grid.flat(w.m.map(|x| grid.bin(x)));
        let tf = w.time_factor(t);
        coeff[0][idx] += w.phi_over_c * tf;
        for k in 0..3 {
            coeff[k + 1][idx] += w.a[k] * tf;
        }
    }
    let mut it = coeff.into_iter().map(|s| synthesize(grid, &s));
    let phi = it.next().unwrap();
    PotentialSlice {
        phi_over_c: ScalarField {
            grid: *grid,
            t,
            data: phi,
        },
        a: Vec3Field {
            grid: *grid,
            t,
            comps: [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()],
        },
    }
}

impl FourPotential {
    pub fn from_waves(grid: GridSpec, t: f64, waves: Vec<PotentialWave>) -> Result<Self, FieldError> {
        grid.validate()?;
        if let Some(w) = waves.iter().find(|w| !grid.resolves(w.m)) {
            return Err(FieldError::OffLattice(w.m));
        }
        Ok(Self {
            grid,
            t,
            backing: TimeBacking::Modes(waves),
        })
    }

    pub fn from_samples(
        grid: GridSpec,
        t: f64,
        dt: f64,
        slices: Vec<PotentialSlice>,
    ) -> Result<Self, FieldError> {
        if !(2..=3).contains(&slices.len()) {
            return Err(FieldError::InvalidInput(format!(
                "grid-sampled potential needs 2 or 3 slices, got {}",
                slices.len()
            )));
        }
        for s in &slices {
            grid.check_same(&s.phi_over_c.grid)?;
            grid.check_same(&s.a.grid)?;
        }
        Ok(Self {
            grid,
            t,
            backing: TimeBacking::Samples { dt, slices },
        })
    }

    pub fn zero(grid: GridSpec, t: f64) -> Self {
        Self {
            grid,
            t,
            backing: TimeBacking::Modes(Vec::new()),
        }
    }

    pub fn is_mode_backed(&self) -> bool {
        matches!(self.backing, TimeBacking::Modes(_))
    }

    pub fn waves(&self) -> Option<&[PotentialWave]> {
        match &self.backing {
            TimeBacking::Modes(w) => Some(w),
            TimeBacking::Samples { .. } => None,
        }
    }

    /// Same analytic potential viewed at another time.
    pub fn at_time(&self, t: f64) -> Result<Self, FieldError> {
        match &self.backing {
            TimeBacking::Modes(_) => Ok(Self { t, ..self.clone() }),
            TimeBacking::Samples { .. } => Err(FieldError::NeedsModeBacking("at_time")),
        }
    }

    /// Values at `self.t`.
    pub fn sample(&self) -> PotentialSlice {
        match &self.backing {
            TimeBacking::Modes(w) => render_waves(&self.grid, self.t, w.iter()),
            TimeBacking::Samples { slices, .. } => {
                let mid = if slices.len() == 3 { 1 } else { 0 };
                slices[mid].clone()
            }
        }
    }

    /// `d/dt` of the potential at `self.t`.
    pub fn time_derivative(&self) -> Result<PotentialSlice, FieldError> {
        match &self.backing {
            TimeBacking::Modes(w) => {
                let d: Vec<_> = w.iter().map(|w| w.differentiated()).collect();
                Ok(render_waves(&self.grid, self.t, d.iter()))
            }
            TimeBacking::Samples { dt, slices } => {
                if *dt == 0.0 || !dt.is_finite() {
                    return Err(FieldError::MissingTimeDerivative);
                }
                let (first, last) = (&slices[0], &slices[slices.len() - 1]);
                let span = dt * (slices.len() - 1) as f64;
                let mut d = last.lincomb(1.0 / span, first, -1.0 / span);
                d.phi_over_c.t = self.t;
                d.a.t = self.t;
                Ok(d)
            }
        }
    }

    /// The potential `d/dt A` as a new analytic potential.
    pub fn differentiated(&self) -> Result<Self, FieldError> {
        match &self.backing {
            TimeBacking::Modes(w) => Ok(Self {
                grid: self.grid,
                t: self.t,
                backing: TimeBacking::Modes(w.iter().map(|w| w.differentiated()).collect()),
            }),
            TimeBacking::Samples { .. } => Err(FieldError::NeedsModeBacking("higher time derivatives")),
        }
    }

    /// Pointwise sum of two analytic potentials.
    pub fn superpose(&self, other: &Self) -> Result<Self, FieldError> {
        self.grid.check_same(&other.grid)?;
        match (&self.backing, &other.backing) {
            (TimeBacking::Modes(a), TimeBacking::Modes(b)) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                Ok(Self {
                    grid: self.grid,
                    t: self.t,
                    backing: TimeBacking::Modes(w),
                })
            }
            _ => Err(FieldError::NeedsModeBacking("superpose")),
        }
    }
}

/// Analytic scalar wave `amp e^{-j omega t + j k.x}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarWave {
    pub m: [i64; 3],
    pub omega: f64,
    pub amp: Complex,
}

/// Gauge function `chi`, band-limited and analytic in time.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeFunction {
    pub grid: GridSpec,
    pub waves: Vec<ScalarWave>,
}

impl GaugeFunction {
    pub fn new(grid: GridSpec, waves: Vec<ScalarWave>) -> Result<Self, FieldError> {
        if let Some(w) = waves.iter().find(|w| !grid.resolves(w.m)) {
            return Err(FieldError::OffLattice(w.m));
        }
        Ok(Self { grid, waves })
    }

    fn render(&self, t: f64, f: impl Fn(&ScalarWave) -> Complex) -> ScalarField {
        let mut coeff = vec![c(0.0, 0.0); self.grid.len()];
        for w in &self.waves {
            let idx = self.grid.flat(w.m.map(|x| self.grid.bin(x)));
            coeff[idx] += f(w) * Complex::from_polar(1.0, -w.omega * t);
        }
        ScalarField {
            grid: self.grid,
            t,
            data: synthesize(&self.grid, &coeff),
        }
    }

    pub fn sample(&self, t: f64) -> ScalarField {
        self.render(t, |w| w.amp)
    }

    pub fn time_derivative(&self, t: f64) -> ScalarField {
        self.render(t, |w| -J * w.omega * w.amp)
    }

    /// `(d_ct^2 - laplacian) chi`, evaluated per wave.
    pub fn dalembertian(&self, t: f64, c_light: f64) -> ScalarField {
        let g = self.grid;
        self.render(t, |w| {
            let k = g.wavevector(w.m);
            let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            w.amp * (k2 - (w.omega / c_light).powi(2))
        })
    }
}

/// `phi' = phi - d_t chi`, `A' = A + grad chi`.
pub fn gauge_transform(
    pot: &FourPotential,
    chi: &GaugeFunction,
    c_light: f64,
) -> Result<FourPotential, FieldError> {
    pot.grid.check_same(&chi.grid)?;
    match &pot.backing {
        TimeBacking::Modes(w) => {
            let mut waves = w.clone();
            for s in &chi.waves {
                let k = pot.grid.wavevector(s.m);
                waves.push(PotentialWave {
                    m: s.m,
                    omega: s.omega,
                    phi_over_c: J * s.omega * s.amp / c_light,
                    a: ComplexVec3::from_real(k).scale(J * s.amp),
                });
            }
            FourPotential::from_waves(pot.grid, pot.t, waves)
        }
        TimeBacking::Samples { dt, slices } => {
            let n = slices.len();
            let t0 = if n == 3 { pot.t - dt } else { pot.t };
            let shifted = slices
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let t = t0 + i as f64 * dt;
                    let dchi = chi.time_derivative(t);
                    let g = super::spectral::grad(&chi.sample(t));
                    PotentialSlice {
                        phi_over_c: s.phi_over_c.zip_with(&dchi, |p, d| p - d / c_light),
                        a: &s.a + &g,
                    }
                })
                .collect();
            FourPotential::from_samples(pot.grid, pot.t, *dt, shifted)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn off_lattice_wave_rejected() {
        let g = GridSpec::new(8, 1.0).unwrap();
        let w = PotentialWave {
            m: [4, 0, 0],
            omega: 1.0,
            phi_over_c: c(1.0, 0.0),
            a: ComplexVec3::ZERO,
        };
        assert!(matches!(
            FourPotential::from_waves(g, 0.0, vec![w]),
            Err(FieldError::OffLattice(_))
        ));
    }

    #[test]
    fn zero_dt_samples_have_no_time_derivative() {
        let g = GridSpec::new(4, 1.0).unwrap();
        let s = PotentialSlice::zeros(g, 0.0);
        let p = FourPotential::from_samples(g, 0.0, 0.0, vec![s.clone(), s]).unwrap();
        assert!(matches!(p.time_derivative(), Err(FieldError::MissingTimeDerivative)));
        assert!(p.differentiated().is_err());
    }

    #[test]
    fn analytic_time_derivative_matches_central_difference() {
        let g = GridSpec::new(8, 1.0).unwrap();
        let w = PotentialWave {
            m: [1, 0, 0],
            omega: 2.0,
            phi_over_c: c(0.5, 0.1),
            a: ComplexVec3::new(c(0.0, 0.0), c(1.0, 0.0), J),
        };
        let p = FourPotential::from_waves(g, 0.3, vec![w]).unwrap();
        let exact = p.time_derivative().unwrap();
        let h = 1e-4;
        let slices = [-h, 0.0, h].map(|d| p.at_time(0.3 + d).unwrap().sample()).to_vec();
        let fd = FourPotential::from_samples(g, 0.3, h, slices).unwrap().time_derivative().unwrap();
        assert!((&fd.a - &exact.a).max_abs() < 1e-7);
        assert!((&fd.phi_over_c - &exact.phi_over_c).max_abs() < 1e-7);
    }
}
