//! Pseudospectral space derivatives on the periodic box.
//!
//! A band-limited mode `e^{j k.x}` differentiates to `j k e^{j k.x}` exactly.
//! First-derivative coefficients of the Nyquist bin are zeroed; the Laplacian
//! keeps them.

use super::grid::{spectrum, synthesize, GridSpec, ScalarField, Vec3Field};
use crate::algebra::{c, Complex, J};

fn axis_multiplier(grid: &GridSpec, idx: usize, axis: usize) -> Complex {
    let m = grid.lattice(idx)[axis];
    if grid.is_nyquist(m) {
        c(0.0, 0.0)
    } else {
        J * (m as f64 * grid.dk())
    }
}

fn k_squared(grid: &GridSpec, idx: usize) -> f64 {
    let k = grid.wavevector(grid.lattice(idx));
    k[0] * k[0] + k[1] * k[1] + k[2] * k[2]
}

fn apply(grid: &GridSpec, data: &[Complex], mult: impl Fn(usize) -> Complex) -> Vec<Complex> {
    let mut s = spectrum(grid, data);
    for (idx, z) in s.iter_mut().enumerate() {
        *z *= mult(idx);
    }
    synthesize(grid, &s)
}

/// Partial derivative along `axis`.
pub fn partial(f: &ScalarField, axis: usize) -> ScalarField {
    let g = f.grid;
    ScalarField {
        grid: g,
        t: f.t,
        data: apply(&g, &f.data, |i| axis_multiplier(&g, i, axis)),
    }
}

pub fn grad(f: &ScalarField) -> Vec3Field {
    let g = f.grid;
    let s = spectrum(&g, &f.data);
    let comps = [0, 1, 2].map(|a| {
        let sa: Vec<Complex> = s
            .iter()
            .enumerate()
            .map(|(i, z)| z * axis_multiplier(&g, i, a))
            .collect();
        synthesize(&g, &sa)
    });
    Vec3Field {
        grid: g,
        t: f.t,
        comps,
    }
}

pub fn div(v: &Vec3Field) -> ScalarField {
    let g = v.grid;
    let mut acc = vec![c(0.0, 0.0); g.len()];
    for a in 0..3 {
        let s = spectrum(&g, &v.comps[a]);
        for (i, z) in s.iter().enumerate() {
            acc[i] += z * axis_multiplier(&g, i, a);
        }
    }
    ScalarField {
        grid: g,
        t: v.t,
        data: synthesize(&g, &acc),
    }
}

pub fn curl(v: &Vec3Field) -> Vec3Field {
    let g = v.grid;
    let s: Vec<Vec<Complex>> = (0..3).map(|a| spectrum(&g, &v.comps[a])).collect();
    let d = |i: usize, a: usize| axis_multiplier(&g, i, a);
    let comps = [0, 1, 2].map(|k| {
        let (p, q) = ((k + 1) % 3, (k + 2) % 3);
        // (curl v)_k = d_p v_q - d_q v_p
        let sk: Vec<Complex> = (0..g.len())
            .map(|i| d(i, p) * s[q][i] - d(i, q) * s[p][i])
            .collect();
        synthesize(&g, &sk)
    });
    Vec3Field {
        grid: g,
        t: v.t,
        comps,
    }
}

pub fn laplacian(f: &ScalarField) -> ScalarField {
    let g = f.grid;
    ScalarField {
        grid: g,
        t: f.t,
        data: apply(&g, &f.data, |i| c(-k_squared(&g, i), 0.0)),
    }
}

pub fn vector_laplacian(v: &Vec3Field) -> Vec3Field {
    Vec3Field::from_components(
        laplacian(&v.component(0)),
        laplacian(&v.component(1)),
        laplacian(&v.component(2)),
    )
}

/// Solves `laplacian(u) = f` for the zero-mean `u`. The mean of `f` is dropped.
pub fn poisson_solve(f: &ScalarField) -> ScalarField {
    let g = f.grid;
    ScalarField {
        grid: g,
        t: f.t,
        data: apply(&g, &f.data, |i| {
            let k2 = k_squared(&g, i);
            if k2 == 0.0 {
                c(0.0, 0.0)
            } else {
                c(-1.0 / k2, 0.0)
            }
        }),
    }
}
