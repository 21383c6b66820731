//! Photon four-currents from the phase symmetry, and the continuity check.
//!
//! Both currents need the content split by frequency sign, because the
//! charge carries a factor `eps` per component. Components are supplied as
//! [`LabeledPotential`]s.

use serde::{Deserialize, Serialize};

use super::constants::PhysicalConstants;
use super::grid::{ScalarField, Vec3Field};
use super::potential::FourPotential;
use super::rs::compute_rs;
use super::spectral::div;
use super::tensor::{derivative_tensor, METRIC};
use super::FieldError;
use crate::algebra::{c, Complex, J};
use crate::sign::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurrentKind {
    /// Current of the standard Lagrangian in Coulomb gauge.
    Photon,
    /// Current of the covariant Lagrangian.
    Covariant,
    /// Prescribed charged-matter source; `j0 = c rho`.
    Matter,
}

/// Four-current `(J^0, J)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourCurrent {
    pub j0: ScalarField,
    pub j: Vec3Field,
    pub kind: CurrentKind,
}

impl FourCurrent {
    /// Matter source from charge density `rho` and current density `j`.
    pub fn matter(rho: &ScalarField, j: Vec3Field, k: &PhysicalConstants) -> Result<Self, FieldError> {
        rho.grid.check_same(&j.grid)?;
        Ok(Self {
            j0: rho.scale(c(k.c, 0.0)),
            j,
            kind: CurrentKind::Matter,
        })
    }

    /// `(1/c) * integral of J^0` over the box. For the photon currents this is
    /// the photon number.
    pub fn number(&self, k: &PhysicalConstants) -> f64 {
        self.j0.integrate().re / k.c
    }
}

/// One frequency-sign (and optionally helicity) component of a potential.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPotential {
    pub eps: Option<Sign>,
    pub lam: Option<Sign>,
    pub potential: FourPotential,
}

impl LabeledPotential {
    pub fn new(eps: Sign, lam: Option<Sign>, potential: FourPotential) -> Self {
        Self {
            eps: Some(eps),
            lam,
            potential,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoetherKind {
    /// `J^mu = -(j eps0 c^2 / hbar) sum_eps eps A*_nu <->d^mu A^nu`.
    Covariant,
    /// `J = (j eps0 c / hbar) sum eps (E*.A, -c B* x A + E* phi) + c.c.`
    Standard,
}

fn check_components(comps: &[LabeledPotential]) -> Result<(), FieldError> {
    if comps.is_empty() {
        return Err(FieldError::InvalidInput("no potential components".into()));
    }
    if comps.iter().any(|p| p.eps.is_none()) {
        return Err(FieldError::UnresolvedFrequencySign);
    }
    let g = comps[0].potential.grid;
    for p in comps {
        g.check_same(&p.potential.grid)?;
    }
    Ok(())
}

pub fn noether_current(
    kind: NoetherKind,
    comps: &[LabeledPotential],
    k: &PhysicalConstants,
) -> Result<FourCurrent, FieldError> {
    check_components(comps)?;
    let g = comps[0].potential.grid;
    let t = comps[0].potential.t;
    let mut j0 = ScalarField::zeros(g, t);
    let mut jv = Vec3Field::zeros(g, t);
    match kind {
        NoetherKind::Standard => {
            let pre = J * (k.eps0 * k.c / k.hbar);
            for comp in comps {
                let eps = comp.eps.unwrap().value();
                let pot = &comp.potential;
                let rs = compute_rs(pot, k)?;
                let s = pot.sample();
                for i in 0..g.len() {
                    let e_c = rs.e.at(i).conj();
                    let b_c = rs.b.at(i).conj();
                    let a = s.a.at(i);
                    let phi = s.phi_over_c.data[i] * k.c;
                    let x0 = pre * eps * e_c.dot(&a);
                    let xv = (-(b_c.cross(&a) * k.c) + e_c * phi) * (pre * eps);
                    // + c.c.
                    j0.data[i] += c(2.0 * x0.re, 0.0);
                    for a in 0..3 {
                        jv.comps[a][i] += c(2.0 * xv[a].re, 0.0);
                    }
                }
            }
        }
        NoetherKind::Covariant => {
            let pre = -J * (k.eps0 * k.c * k.c / k.hbar);
            for comp in comps {
                let eps = comp.eps.unwrap().value();
                let pot = &comp.potential;
                let d = derivative_tensor(pot, k)?;
                let s = pot.sample();
                for i in 0..g.len() {
                    let a = [s.phi_over_c.data[i], s.a.comps[0][i], s.a.comps[1][i], s.a.comps[2][i]];
                    let m = &d.data[i];
                    let mut cur = [c(0.0, 0.0); 4];
                    for (mu, out) in cur.iter_mut().enumerate() {
                        for nu in 0..4 {
                            // A*_nu d^mu A^nu - (d^mu A*_nu) A^nu
                            *out += (a[nu].conj() * m[mu][nu] - m[mu][nu].conj() * a[nu]) * METRIC[nu];
                        }
                    }
                    j0.data[i] += pre * eps * cur[0];
                    for a in 0..3 {
                        jv.comps[a][i] += pre * eps * cur[a + 1];
                    }
                }
            }
        }
    }
    Ok(FourCurrent {
        j0,
        j: jv,
        kind: match kind {
            NoetherKind::Standard => CurrentKind::Photon,
            NoetherKind::Covariant => CurrentKind::Covariant,
        },
    })
}

/// Source side of the continuity equation:
/// `-(j mu0 / (hbar c)) A*_nu J_m^nu + c.c.`
pub fn continuity_source(
    pot: &FourPotential,
    jm: &FourCurrent,
    k: &PhysicalConstants,
) -> Result<ScalarField, FieldError> {
    if jm.kind != CurrentKind::Matter {
        return Err(FieldError::InvalidInput("continuity source needs a matter current".into()));
    }
    pot.grid.check_same(&jm.j0.grid)?;
    let s = pot.sample();
    let pre = -J * (k.mu0() / (k.hbar * k.c));
    let data = (0..pot.grid.len())
        .map(|i| {
            let a = [s.phi_over_c.data[i], s.a.comps[0][i], s.a.comps[1][i], s.a.comps[2][i]];
            let j = [jm.j0.data[i], jm.j.comps[0][i], jm.j.comps[1][i], jm.j.comps[2][i]];
            let x: Complex = (0..4).map(|nu| a[nu].conj() * METRIC[nu] * j[nu]).sum::<Complex>() * pre;
            c(2.0 * x.re, 0.0)
        })
        .collect();
    Ok(ScalarField {
        grid: pot.grid,
        t: pot.t,
        data,
    })
}

/// `d_ct J^0 + div J - source` at the middle sample of an equally spaced
/// series, with a central difference in time.
pub fn continuity_residual(
    series: &[FourCurrent],
    dt: f64,
    source: Option<&ScalarField>,
    k: &PhysicalConstants,
) -> Result<ScalarField, FieldError> {
    if series.len() < 3 {
        return Err(FieldError::TooFewTimeSamples(series.len()));
    }
    if dt <= 0.0 {
        return Err(FieldError::MissingTimeDerivative);
    }
    let mid = series.len() / 2;
    let (before, here, after) = (&series[mid - 1], &series[mid], &series[mid + 1]);
    before.j0.grid.check_same(&after.j0.grid)?;
    let s = 1.0 / (2.0 * dt * k.c);
    let dj0 = after.j0.zip_with(&before.j0, |a, b| (a - b) * s);
    let mut r = &dj0 + &div(&here.j);
    if let Some(src) = source {
        r = &r - src;
    }
    r.t = here.j0.t;
    Ok(r)
}
