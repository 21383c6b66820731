//! Maxwell residuals in two independent forms.
//!
//! [`maxwell_residual_rs`] evaluates `dbar F - Z0 Jbar_m` with the geometric
//! product, `dbar = d_ct + grad`, and reads off the four grades.
//! [`maxwell_split`] evaluates the four classical equations directly. The two
//! agree grade by grade once the `i` and `c` factors are accounted for:
//!
//! | grade | RS residual | classical residual |
//! |-------|-------------|--------------------|
//! | 0 | `div E - Z0 c rho` | `div E - rho/eps0` |
//! | 1 | `d_ct E - c curl B + Z0 J` | `(d_t E - c^2 curl B + J/eps0) / c` |
//! | 2 | `i (d_t B + curl E)` | `d_t B + curl E` |
//! | 3 | `i c div B` | `c div B` |

use super::constants::PhysicalConstants;
use super::current::{CurrentKind, FourCurrent};
use super::grid::{ScalarField, Vec3Field};
use super::potential::FourPotential;
use super::rs::{compute_rs, RSField};
use super::spectral::{curl, div, grad, laplacian, partial, vector_laplacian};
use super::FieldError;
use crate::algebra::{c, Blade, Multivector};

/// The four grades of `dbar F - Z0 Jbar_m`. Bivector and trivector parts
/// are stored as their duals (coefficients of `i e_k` and `i`).
#[derive(Debug, Clone, PartialEq)]
pub struct GradedResidual {
    pub scalar: ScalarField,
    pub vector: Vec3Field,
    pub bivector: Vec3Field,
    pub trivector: ScalarField,
}

impl GradedResidual {
    pub fn max_abs(&self) -> [f64; 4] {
        [
            self.scalar.max_abs(),
            self.vector.max_abs(),
            self.bivector.max_abs(),
            self.trivector.max_abs(),
        ]
    }
}

/// Residuals of `div B = 0`, `d_t B + curl E = 0`, `div E = rho/eps0`, and
/// the Ampere law `d_t E - c^2 curl B = -J/eps0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalResiduals {
    pub div_b: ScalarField,
    pub faraday: Vec3Field,
    pub gauss: ScalarField,
    pub ampere: Vec3Field,
}

impl ClassicalResiduals {
    pub fn max_abs(&self) -> [f64; 4] {
        [
            self.div_b.max_abs(),
            self.faraday.max_abs(),
            self.gauss.max_abs(),
            self.ampere.max_abs(),
        ]
    }
}

fn matter<'a>(f: &RSField, jm: Option<&'a FourCurrent>) -> Result<Option<&'a FourCurrent>, FieldError> {
    if let Some(j) = jm {
        f.grid.check_same(&j.j0.grid)?;
        if j.kind != CurrentKind::Matter {
            return Err(FieldError::InvalidInput(
                "Maxwell source must be a matter current".into(),
            ));
        }
    }
    Ok(jm)
}

/// `dbar F - Z0 Jbar_m` with `F = E + i c B`, `Jbar_m = c rho - J`.
pub fn maxwell_residual_rs(
    f: &RSField,
    jm: Option<&FourCurrent>,
    k: &PhysicalConstants,
) -> Result<GradedResidual, FieldError> {
    let rate = f.rate.as_ref().ok_or(FieldError::MissingTimeDerivative)?;
    let jm = matter(f, jm)?;
    let g = f.grid;
    let cb = f.b.scale(c(k.c, 0.0));
    // d_a of each of the six components of E and cB
    let d_e: Vec<Vec3Field> = (0..3)
        .map(|a| {
            Vec3Field::from_components(
                partial(&f.e.component(0), a),
                partial(&f.e.component(1), a),
                partial(&f.e.component(2), a),
            )
        })
        .collect();
    let d_cb: Vec<Vec3Field> = (0..3)
        .map(|a| {
            Vec3Field::from_components(
                partial(&cb.component(0), a),
                partial(&cb.component(1), a),
                partial(&cb.component(2), a),
            )
        })
        .collect();
    let inv_c = 1.0 / k.c;
    let z0 = k.z0();
    let mut out = GradedResidual {
        scalar: ScalarField::zeros(g, f.t),
        vector: Vec3Field::zeros(g, f.t),
        bivector: Vec3Field::zeros(g, f.t),
        trivector: ScalarField::zeros(g, f.t),
    };
    for i in 0..g.len() {
        // d_ct F = (d_t E + i c d_t B) / c
        let mut m = (Multivector::vector(&rate.e.at(i))
            + Multivector::bivector(&(rate.b.at(i) * k.c)))
        .scale(c(inv_c, 0.0));
        for a in 0..3 {
            let da_f = Multivector::vector(&d_e[a].at(i)) + Multivector::bivector(&d_cb[a].at(i));
            m += Multivector::blade(Blade::vector(a)) * da_f;
        }
        if let Some(j) = jm {
            // Jbar = j0 - J, with j0 = c rho
            m[Blade::S] -= j.j0.data[i] * z0;
            for a in 0..3 {
                m[Blade::vector(a)] += j.j.comps[a][i] * z0;
            }
        }
        out.scalar.data[i] = m[Blade::S];
        out.trivector.data[i] = m[Blade::E123];
        out.vector.set(i, m.vector_part());
        out.bivector.set(i, m.bivector_part());
    }
    Ok(out)
}

pub fn maxwell_split(
    f: &RSField,
    jm: Option<&FourCurrent>,
    k: &PhysicalConstants,
) -> Result<ClassicalResiduals, FieldError> {
    let rate = f.rate.as_ref().ok_or(FieldError::MissingTimeDerivative)?;
    let jm = matter(f, jm)?;
    let div_b = div(&f.b);
    let faraday = &rate.b + &curl(&f.e);
    let mut gauss = div(&f.e);
    let c2 = k.c * k.c;
    let mut ampere = rate.e.zip_with(&curl(&f.b), |de, cb| de - cb * c2);
    if let Some(j) = jm {
        // rho = j0 / c
        let s = 1.0 / (k.c * k.eps0);
        gauss = gauss.zip_with(&j.j0, |d, j0| d - j0 * s);
        ampere = ampere.zip_with(&j.j, |a, jj| a + jj / k.eps0);
    }
    Ok(ClassicalResiduals {
        div_b,
        faraday,
        gauss,
        ampere,
    })
}

/// Residual of `c box Abar - c dbar Lambda - Z0 Jbar_m`, returned as the
/// scalar and vector parts of a paravector field.
///
/// Needs the second time derivative, so only mode-backed potentials qualify.
pub fn wave_residual(
    pot: &FourPotential,
    jm: Option<&FourCurrent>,
    k: &PhysicalConstants,
) -> Result<(ScalarField, Vec3Field), FieldError> {
    if !pot.is_mode_backed() {
        return Err(FieldError::NeedsModeBacking("wave residual"));
    }
    let rs = compute_rs(pot, k)?;
    let jm = matter(&rs, jm)?;
    let slice = pot.sample();
    let dd = pot.differentiated()?.time_derivative()?;
    let rate = rs.rate.as_ref().expect("mode-backed potentials carry a rate");
    let cc = k.c;
    let inv_c2 = 1.0 / (cc * cc);
    let z0 = k.z0();

    // c box(phi/c) - d_t Lambda
    let lap_phi = laplacian(&slice.phi_over_c);
    let mut scalar = dd
        .phi_over_c
        .zip_with(&lap_phi, |tt, lap| (tt * inv_c2 - lap) * cc)
        .zip_with(&rate.scalar, |x, dl| x - dl / cc);

    // -c box A - grad(c Lambda)
    let lap_a = vector_laplacian(&slice.a);
    let mut vector = dd
        .a
        .zip_with(&lap_a, |tt, lap| (lap - tt * inv_c2) * cc)
        .zip_with(&grad(&rs.scalar), |x, g| x - g);

    if let Some(j) = jm {
        scalar = scalar.zip_with(&j.j0, |x, j0| x - j0 * z0);
        vector = vector.zip_with(&j.j, |x, jj| x + jj * z0);
    }
    Ok((scalar, vector))
}
