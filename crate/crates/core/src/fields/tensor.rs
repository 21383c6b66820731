//! Faraday tensor, Lagrangian densities and conjugate momenta.
//!
//! Index conventions: `x^mu = (ct, x)`, `d^mu = (d_ct, -grad)`,
//! `A^mu = (phi/c, A)`, metric `diag(1, -1, -1, -1)`. The potential and its
//! complex conjugate are treated as independent fields.

use super::constants::PhysicalConstants;
use super::current::{CurrentKind, FourCurrent};
use super::grid::{GridSpec, ScalarField};
use super::potential::{FourPotential, PotentialSlice};
use super::rs::RSField;
use super::spectral::partial;
use super::FieldError;
use crate::algebra::{c, Complex};

pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// A 4x4 complex tensor per grid point, upper indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank2Field {
    pub grid: GridSpec,
    pub t: f64,
    pub data: Vec<[[Complex; 4]; 4]>,
}

impl Rank2Field {
    pub fn zeros(grid: GridSpec, t: f64) -> Self {
        Self {
            grid,
            t,
            data: vec![[[c(0.0, 0.0); 4]; 4]; grid.len()],
        }
    }

    pub fn component(&self, mu: usize, nu: usize) -> ScalarField {
        ScalarField {
            grid: self.grid,
            t: self.t,
            data: self.data.iter().map(|m| m[mu][nu]).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        Self {
            grid: self.grid,
            t: self.t,
            data: self.data.iter().map(|m| m.map(|row| row.map(&f))).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|m| m.iter().flat_map(|r| r.iter()))
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|T^{mu nu} + T^{nu mu}|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for m in &self.data {
            for mu in 0..4 {
                for nu in 0..4 {
                    worst = worst.max((m[mu][nu] + m[nu][mu]).norm());
                }
            }
        }
        worst
    }
}

fn derivative_tensor_from(
    slice: &PotentialSlice,
    dslice: &PotentialSlice,
    k: &PhysicalConstants,
) -> Rank2Field {
    let g = slice.a.grid;
    let comps: [ScalarField; 4] = [
        slice.phi_over_c.clone(),
        slice.a.component(0),
        slice.a.component(1),
        slice.a.component(2),
    ];
    let dcomps: [ScalarField; 4] = [
        dslice.phi_over_c.clone(),
        dslice.a.component(0),
        dslice.a.component(1),
        dslice.a.component(2),
    ];
    let mut out = Rank2Field::zeros(g, slice.a.t);
    let inv_c = 1.0 / k.c;
    for nu in 0..4 {
        for i in 0..g.len() {
            out.data[i][0][nu] = dcomps[nu].data[i] * inv_c;
        }
        for a in 0..3 {
            let d = partial(&comps[nu], a);
            for i in 0..g.len() {
                out.data[i][a + 1][nu] = -d.data[i];
            }
        }
    }
    out
}

/// `d^mu A^nu` at the potential's time.
pub fn derivative_tensor(pot: &FourPotential, k: &PhysicalConstants) -> Result<Rank2Field, FieldError> {
    let slice = pot.sample();
    let dslice = pot.time_derivative()?;
    Ok(derivative_tensor_from(&slice, &dslice, k))
}

/// `F^{mu nu} = d^mu A^nu - d^nu A^mu`.
///
/// Components: `F^{i0} = E_i / c`, `F^{ij} = -eps_{ijk} B_k`.
pub fn faraday(pot: &FourPotential, k: &PhysicalConstants) -> Result<Rank2Field, FieldError> {
    let d = derivative_tensor(pot, k)?;
    Ok(antisymmetrize(&d))
}

fn antisymmetrize(d: &Rank2Field) -> Rank2Field {
    let mut out = Rank2Field::zeros(d.grid, d.t);
    for (o, m) in out.data.iter_mut().zip(&d.data) {
        for mu in 0..4 {
            for nu in 0..4 {
                o[mu][nu] = m[mu][nu] - m[nu][mu];
            }
        }
    }
    out
}

/// Tensor assembled from `E` and `B` with the same component layout as
/// [`faraday`]; used to cross-check the two routes.
pub fn faraday_from_rs(f: &RSField, k: &PhysicalConstants) -> Rank2Field {
    let mut out = Rank2Field::zeros(f.grid, f.t);
    for (i, m) in out.data.iter_mut().enumerate() {
        let e = f.e.at(i);
        let b = f.b.at(i);
        for a in 0..3 {
            m[a + 1][0] = e[a] / k.c;
            m[0][a + 1] = -e[a] / k.c;
        }
        for a in 0..3 {
            let (p, q) = ((a + 1) % 3, (a + 2) % 3);
            // F^{pq} = -B_a for cyclic (p, q, a)
            m[p + 1][q + 1] = -b[a];
            m[q + 1][p + 1] = b[a];
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LagrangianKind {
    Std,
    Fermi,
    Cov,
    Int,
}

/// Inputs for [`lagrangian_density`]; which ones are needed depends on the kind.
#[derive(Debug, Clone, Copy, Default)]
pub struct LagrangianInputs<'a> {
    pub rs: Option<&'a RSField>,
    pub potential: Option<&'a FourPotential>,
    pub matter: Option<&'a FourCurrent>,
}

/// Pointwise densities:
/// - `Std`: `-eps0 (E*.E - c^2 B*.B)`
/// - `Fermi`: `Std - eps0 c^2 Lambda Lambda*`
/// - `Cov`: `-eps0 c^2 (d^mu A*_nu)(d_mu A^nu)`
/// - `Int`: `-J_m^{nu*} A_nu - J_m^nu A*_nu`
pub fn lagrangian_density(
    kind: LagrangianKind,
    inputs: LagrangianInputs<'_>,
    k: &PhysicalConstants,
) -> Result<ScalarField, FieldError> {
    let need_rs = || inputs.rs.ok_or(FieldError::MissingInput("RS field (E, B, Lambda)"));
    let need_pot = || inputs.potential.ok_or(FieldError::MissingInput("four-potential"));
    let c2 = k.c * k.c;
    match kind {
        LagrangianKind::Std => {
            let f = need_rs()?;
            let e2 = f.e.conj().dot(&f.e);
            let b2 = f.b.conj().dot(&f.b);
            Ok(e2.zip_with(&b2, |e, b| -(e - b * c2) * k.eps0))
        }
        LagrangianKind::Fermi => {
            let f = need_rs()?;
            let std = lagrangian_density(LagrangianKind::Std, inputs, k)?;
            let lam = f.lambda(k);
            Ok(std.zip_with(&lam, |s, l| s - l * l.conj() * (k.eps0 * c2)))
        }
        LagrangianKind::Cov => {
            let d = derivative_tensor(need_pot()?, k)?;
            let data = d
                .data
                .iter()
                .map(|m| {
                    let mut acc = c(0.0, 0.0);
                    for mu in 0..4 {
                        for nu in 0..4 {
                            acc += m[mu][nu].conj() * m[mu][nu] * (METRIC[mu] * METRIC[nu]);
                        }
                    }
                    -acc * (k.eps0 * c2)
                })
                .collect();
            Ok(ScalarField {
                grid: d.grid,
                t: d.t,
                data,
            })
        }
        LagrangianKind::Int => {
            let pot = need_pot()?;
            let jm = inputs.matter.ok_or(FieldError::MissingInput("matter current"))?;
            if jm.kind != CurrentKind::Matter {
                return Err(FieldError::InvalidInput("interaction needs a matter current".into()));
            }
            pot.grid.check_same(&jm.j0.grid)?;
            let s = pot.sample();
            let data = (0..pot.grid.len())
                .map(|i| {
                    let j = [jm.j0.data[i], jm.j.comps[0][i], jm.j.comps[1][i], jm.j.comps[2][i]];
                    let a = [s.phi_over_c.data[i], s.a.comps[0][i], s.a.comps[1][i], s.a.comps[2][i]];
                    let mut acc = c(0.0, 0.0);
                    for nu in 0..4 {
                        let a_low = a[nu] * METRIC[nu];
                        acc -= j[nu].conj() * a_low + j[nu] * a_low.conj();
                    }
                    acc
                })
                .collect();
            Ok(ScalarField {
                grid: pot.grid,
                t: pot.t,
                data,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentumKind {
    Std,
    Cov,
}

/// `Pi_std = eps0 F^{mu nu}`, `Pi_cov = -eps0 d^mu A^nu`.
pub fn conjugate_momentum(
    kind: MomentumKind,
    pot: &FourPotential,
    k: &PhysicalConstants,
) -> Result<Rank2Field, FieldError> {
    let slice = pot.sample();
    let dslice = pot.time_derivative()?;
    Ok(momentum_from(kind, &slice, &dslice, k))
}

fn momentum_from(
    kind: MomentumKind,
    slice: &PotentialSlice,
    dslice: &PotentialSlice,
    k: &PhysicalConstants,
) -> Rank2Field {
    let d = derivative_tensor_from(slice, dslice, k);
    match kind {
        MomentumKind::Std => antisymmetrize(&d).map(|z| z * k.eps0),
        MomentumKind::Cov => d.map(|z| -z * k.eps0),
    }
}

/// Free-field Lagrange equation `d_mu Pi^{mu nu}` for each `nu`.
///
/// The time derivative of `Pi` comes from the analytic potential, so only
/// mode-backed potentials are accepted.
pub fn lagrange_residual(
    kind: MomentumKind,
    pot: &FourPotential,
    k: &PhysicalConstants,
) -> Result<[ScalarField; 4], FieldError> {
    let dpot = pot.differentiated()?;
    let slice = pot.sample();
    let dslice = pot.time_derivative()?;
    let ddslice = dpot.time_derivative()?;
    let pi = momentum_from(kind, &slice, &dslice, k);
    let dpi = momentum_from(kind, &dslice, &ddslice, k);
    let inv_c = 1.0 / k.c;
    let g = pot.grid;
    let out = [0, 1, 2, 3].map(|nu| {
        let mut acc = dpi.component(0, nu).scale(c(inv_c, 0.0));
        for a in 0..3 {
            acc = &acc + &partial(&pi.component(a + 1, nu), a);
        }
        ScalarField { grid: g, t: pot.t, ..acc }
    });
    Ok(out)
}
