use super::constants::PhysicalConstants;
use super::grid::{GridSpec, ScalarField, Vec3Field};
use super::potential::{FourPotential, PotentialSlice};
use super::spectral::{curl, div, grad};
use super::FieldError;
use crate::algebra::{c, Blade, Multivector};

/// Time derivatives of the three graded pieces of an [`RSField`].
#[derive(Debug, Clone, PartialEq)]
pub struct RsRate {
    pub scalar: ScalarField,
    pub e: Vec3Field,
    pub b: Vec3Field,
}

/// Graded field `F = c Lambda + E + i c B`.
///
/// `scalar` stores `c Lambda` (V/m). `rate`, when present, carries `d/dt` of
/// every piece and enables the Maxwell residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct RSField {
    pub grid: GridSpec,
    pub t: f64,
    pub scalar: ScalarField,
    pub e: Vec3Field,
    pub b: Vec3Field,
    pub rate: Option<RsRate>,
}

impl RSField {
    pub fn new(scalar: ScalarField, e: Vec3Field, b: Vec3Field) -> Result<Self, FieldError> {
        scalar.grid.check_same(&e.grid)?;
        e.grid.check_same(&b.grid)?;
        Ok(Self {
            grid: e.grid,
            t: e.t,
            scalar,
            e,
            b,
            rate: None,
        })
    }

    pub fn with_rate(mut self, rate: RsRate) -> Result<Self, FieldError> {
        self.grid.check_same(&rate.e.grid)?;
        self.grid.check_same(&rate.b.grid)?;
        self.grid.check_same(&rate.scalar.grid)?;
        self.rate = Some(rate);
        Ok(self)
    }

    /// Field at the middle snapshot with a central-difference rate.
    pub fn from_snapshots(before: &RSField, mid: &RSField, after: &RSField, dt: f64) -> Result<Self, FieldError> {
        if dt <= 0.0 {
            return Err(FieldError::MissingTimeDerivative);
        }
        let s = 1.0 / (2.0 * dt);
        let d_s = after.scalar.zip_with(&before.scalar, |a, b| (a - b) * s);
        let d_e = after.e.zip_with(&before.e, |a, b| (a - b) * s);
        let d_b = after.b.zip_with(&before.b, |a, b| (a - b) * s);
        let mut out = mid.clone();
        out.rate = None;
        out.with_rate(RsRate {
            scalar: d_s,
            e: d_e,
            b: d_b,
        })
    }

    pub fn lambda(&self, k: &PhysicalConstants) -> ScalarField {
        self.scalar.scale(c(1.0 / k.c, 0.0))
    }

    /// Full multivector `c Lambda + E + i c B` at grid point `i`.
    pub fn multivector_at(&self, i: usize, k: &PhysicalConstants) -> Multivector {
        let mut m = self.rs_vector_at(i, k);
        m[Blade::S] = self.scalar.data[i];
        m
    }

    /// RS vector `E + i c B` (no scalar part) at grid point `i`.
    pub fn rs_vector_at(&self, i: usize, k: &PhysicalConstants) -> Multivector {
        let e = self.e.at(i);
        let cb = self.b.at(i) * k.c;
        Multivector::vector(&e) + Multivector::bivector(&cb)
    }

    pub fn assemble(&self, k: &PhysicalConstants) -> Vec<Multivector> {
        (0..self.grid.len()).map(|i| self.multivector_at(i, k)).collect()
    }

    pub fn assemble_rs_vector(&self, k: &PhysicalConstants) -> Vec<Multivector> {
        (0..self.grid.len()).map(|i| self.rs_vector_at(i, k)).collect()
    }

    /// Energy-like density `|E|^2 + c^2 |B|^2`.
    pub fn energy_density(&self, k: &PhysicalConstants) -> Vec<f64> {
        let c2 = k.c * k.c;
        self.e
            .norm_sqr()
            .into_iter()
            .zip(self.b.norm_sqr())
            .map(|(e, b)| e + c2 * b)
            .collect()
    }
}

fn rs_pieces(
    slice: &PotentialSlice,
    dslice: &PotentialSlice,
    k: &PhysicalConstants,
) -> (ScalarField, Vec3Field, Vec3Field) {
    // c Lambda = d_t(phi/c) + c div A
    let div_a = div(&slice.a);
    let scalar = dslice
        .phi_over_c
        .zip_with(&div_a, |dp, d| dp + d * k.c);
    // E = -c grad(phi/c) - d_t A
    let gphi = grad(&slice.phi_over_c);
    let e = gphi.zip_with(&dslice.a, |g, da| -g * k.c - da);
    let b = curl(&slice.a);
    (scalar, e, b)
}

/// `Lambda = c^-2 d_t phi + div A`, `E = -grad phi - d_t A`, `B = curl A`.
///
/// Mode-backed potentials also get an exact rate; grid-sampled ones do not.
pub fn compute_rs(pot: &FourPotential, k: &PhysicalConstants) -> Result<RSField, FieldError> {
    let slice = pot.sample();
    let dslice = pot.time_derivative()?;
    let (scalar, e, b) = rs_pieces(&slice, &dslice, k);
    let mut out = RSField {
        grid: pot.grid,
        t: pot.t,
        scalar: ScalarField { t: pot.t, ..scalar },
        e: Vec3Field { t: pot.t, ..e },
        b: Vec3Field { t: pot.t, ..b },
        rate: None,
    };
    if pot.is_mode_backed() {
        let dpot = pot.differentiated()?;
        let ddslice = dpot.time_derivative()?;
        let (ds, de, db) = rs_pieces(&dslice, &ddslice, k);
        out.rate = Some(RsRate {
            scalar: ds,
            e: de,
            b: db,
        });
    }
    Ok(out)
}
