use std::f64::consts::PI;
use std::ops::{Add, Sub};

use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::FieldError;
use crate::algebra::{c, Complex, ComplexVec3};

/// Cubic periodic box with `n` points per axis and edge `length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub length: f64,
}

impl GridSpec {
    pub fn new(n: usize, length: f64) -> Result<Self, FieldError> {
        let g = Self { n, length };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        if self.n < 4 || !self.n.is_power_of_two() {
            return Err(FieldError::InvalidGrid(format!(
                "points per axis must be a power of two >= 4, got {}",
                self.n
            )));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(FieldError::InvalidGrid(format!(
                "box length must be positive, got {}",
                self.length
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(3)
    }

    pub fn volume(&self) -> f64 {
        self.length.powi(3)
    }

    /// Reciprocal lattice spacing `2 pi / L`.
    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length
    }

    pub fn flat(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n + i[1]) * self.n + i[2]
    }

    pub fn unflat(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let dx = self.dx();
        self.unflat(idx).map(|i| i as f64 * dx)
    }

    /// Signed lattice integer for an FFT bin, in `[-n/2, n/2)`.
    pub fn fold(&self, bin: usize) -> i64 {
        let n = self.n as i64;
        let b = bin as i64;
        if b >= n / 2 {
            b - n
        } else {
            b
        }
    }

    /// FFT bin of a signed lattice integer.
    pub fn bin(&self, m: i64) -> usize {
        m.rem_euclid(self.n as i64) as usize
    }

    /// Lattice integers of a flat spectral index.
    pub fn lattice(&self, idx: usize) -> [i64; 3] {
        self.unflat(idx).map(|b| self.fold(b))
    }

    pub fn wavevector(&self, m: [i64; 3]) -> [f64; 3] {
        let dk = self.dk();
        m.map(|x| x as f64 * dk)
    }

    pub fn is_nyquist(&self, m: i64) -> bool {
        m == -(self.n as i64) / 2
    }

    /// True if every component lies strictly inside the resolved band.
    pub fn resolves(&self, m: [i64; 3]) -> bool {
        let half = (self.n / 2) as i64;
        m.iter().all(|x| x.abs() < half)
    }

    pub(crate) fn check_same(&self, other: &GridSpec) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::GridMismatch)
        }
    }
}

/// In-place 3D FFT over a row-major `n^3` array. The inverse is normalized by
/// `1/n^3`, so forward then inverse is the identity.
pub fn fft3(grid: &GridSpec, data: &mut [Complex], inverse: bool) {
    let n = grid.n;
    assert_eq!(data.len(), grid.len());
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    // z axis is contiguous
    fft.process(data);
    let mut line = vec![c(0.0, 0.0); n];
    for ix in 0..n {
        for iz in 0..n {
            for iy in 0..n {
                line[iy] = data[(ix * n + iy) * n + iz];
            }
            fft.process(&mut line);
            for iy in 0..n {
                data[(ix * n + iy) * n + iz] = line[iy];
            }
        }
    }
    for iy in 0..n {
        for iz in 0..n {
            for ix in 0..n {
                line[ix] = data[(ix * n + iy) * n + iz];
            }
            fft.process(&mut line);
            for ix in 0..n {
                data[(ix * n + iy) * n + iz] = line[ix];
            }
        }
    }
    if inverse {
        let s = 1.0 / grid.len() as f64;
        data.iter_mut().for_each(|z| *z *= s);
    }
}

/// Fourier coefficients `f_k` with `f(x) = sum_k f_k e^{j k.x}`.
pub fn spectrum(grid: &GridSpec, data: &[Complex]) -> Vec<Complex> {
    let mut out = data.to_vec();
    fft3(grid, &mut out, false);
    let s = 1.0 / grid.len() as f64;
    out.iter_mut().for_each(|z| *z *= s);
    out
}

/// Inverse of [`spectrum`]: sums `f_k e^{j k.x}` on the grid.
pub fn synthesize(grid: &GridSpec, coeffs: &[Complex]) -> Vec<Complex> {
    let mut out = coeffs.to_vec();
    fft3(grid, &mut out, true);
    let s = grid.len() as f64;
    out.iter_mut().for_each(|z| *z *= s);
    out
}

/// Complex scalar samples on a grid at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub t: f64,
    pub data: Vec<Complex>,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec, t: f64) -> Self {
        Self {
            grid,
            t,
            data: vec![c(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_fn(grid: GridSpec, t: f64, f: impl Fn([f64; 3]) -> Complex) -> Self {
        let data = (0..grid.len()).map(|i| f(grid.position(i))).collect();
        Self { grid, t, data }
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        Self {
            grid: self.grid,
            t: self.t,
            data: self.data.iter().map(|z| f(*z)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex, Complex) -> Complex) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        Self {
            grid: self.grid,
            t: self.t,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Riemann sum over the box; fixed summation order.
    pub fn integrate(&self) -> Complex {
        self.data.iter().sum::<Complex>() * self.grid.cell_volume()
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, o: &ScalarField) -> ScalarField {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, o: &ScalarField) -> ScalarField {
        self.zip_with(o, |a, b| a - b)
    }
}

/// Complex 3-vector samples on a grid, stored component-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Vec3Field {
    pub grid: GridSpec,
    pub t: f64,
    pub comps: [Vec<Complex>; 3],
}

impl Vec3Field {
    pub fn zeros(grid: GridSpec, t: f64) -> Self {
        let z = vec![c(0.0, 0.0); grid.len()];
        Self {
            grid,
            t,
            comps: [z.clone(), z.clone(), z],
        }
    }

    pub fn from_components(x: ScalarField, y: ScalarField, z: ScalarField) -> Self {
        assert!(x.grid == y.grid && y.grid == z.grid, "grid mismatch");
        Self {
            grid: x.grid,
            t: x.t,
            comps: [x.data, y.data, z.data],
        }
    }

    pub fn from_fn(grid: GridSpec, t: f64, f: impl Fn([f64; 3]) -> ComplexVec3) -> Self {
        let mut out = Self::zeros(grid, t);
        for i in 0..grid.len() {
            let v = f(grid.position(i));
            for k in 0..3 {
                out.comps[k][i] = v[k];
            }
        }
        out
    }

    pub fn component(&self, k: usize) -> ScalarField {
        ScalarField {
            grid: self.grid,
            t: self.t,
            data: self.comps[k].clone(),
        }
    }

    pub fn at(&self, i: usize) -> ComplexVec3 {
        ComplexVec3([self.comps[0][i], self.comps[1][i], self.comps[2][i]])
    }

    pub fn set(&mut self, i: usize, v: ComplexVec3) {
        for k in 0..3 {
            self.comps[k][i] = v[k];
        }
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        Self {
            grid: self.grid,
            t: self.t,
            comps: [0, 1, 2].map(|k| self.comps[k].iter().map(|z| f(*z)).collect()),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex, Complex) -> Complex) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        Self {
            grid: self.grid,
            t: self.t,
            comps: [0, 1, 2].map(|k| {
                self.comps[k]
                    .iter()
                    .zip(&other.comps[k])
                    .map(|(a, b)| f(*a, *b))
                    .collect()
            }),
        }
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Pointwise bilinear dot product.
    pub fn dot(&self, other: &Self) -> ScalarField {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let data = (0..self.grid.len())
            .map(|i| self.at(i).dot(&other.at(i)))
            .collect();
        ScalarField {
            grid: self.grid,
            t: self.t,
            data,
        }
    }

    /// Pointwise bilinear cross product.
    pub fn cross(&self, other: &Self) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let mut out = Self::zeros(self.grid, self.t);
        for i in 0..self.grid.len() {
            out.set(i, self.at(i).cross(&other.at(i)));
        }
        out
    }

    /// Scalar field times vector field.
    pub fn scaled_by(&self, s: &ScalarField) -> Self {
        assert_eq!(self.grid, s.grid, "grid mismatch");
        Self {
            grid: self.grid,
            t: self.t,
            comps: [0, 1, 2].map(|k| {
                self.comps[k]
                    .iter()
                    .zip(&s.data)
                    .map(|(a, b)| a * b)
                    .collect()
            }),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|v| v.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|v| v.iter())
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    /// Pointwise `conj(v) . v`.
    pub fn norm_sqr(&self) -> Vec<f64> {
        (0..self.grid.len())
            .map(|i| (0..3).map(|k| self.comps[k][i].norm_sqr()).sum())
            .collect()
    }
}

impl Add for &Vec3Field {
    type Output = Vec3Field;
    fn add(self, o: &Vec3Field) -> Vec3Field {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &Vec3Field {
    type Output = Vec3Field;
    fn sub(self, o: &Vec3Field) -> Vec3Field {
        self.zip_with(o, |a, b| a - b)
    }
}
