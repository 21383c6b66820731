//! Complexified Clifford algebra of physical space.
//!
//! A [`Multivector`] carries eight complex coefficients over the blades
//! `{1, e1, e2, e3, e23, e31, e12, e123}`. Two distinct square roots of minus
//! one live here: the trivector `i = e1 e2 e3`, which is a basis blade, and the
//! coefficient imaginary `j`, which is the imaginary unit of [`Complex`].
//! They commute with each other and with everything else, but they are never
//! identified.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Complex coefficient field. Its imaginary unit is `j`.
pub type Complex = num_complex::Complex64;

/// Coefficient imaginary unit `j`.
pub const J: Complex = Complex::new(0.0, 1.0);

pub(crate) const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Basis blades in canonical storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Blade {
    S,
    E1,
    E2,
    E3,
    E23,
    E31,
    E12,
    E123,
}

impl Blade {
    pub const ALL: [Blade; 8] = [
        Blade::S,
        Blade::E1,
        Blade::E2,
        Blade::E3,
        Blade::E23,
        Blade::E31,
        Blade::E12,
        Blade::E123,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn grade(self) -> usize {
        GRADES[self as usize]
    }

    pub const fn name(self) -> &'static str {
        match self {
            Blade::S => "1",
            Blade::E1 => "e1",
            Blade::E2 => "e2",
            Blade::E3 => "e3",
            Blade::E23 => "e23",
            Blade::E31 => "e31",
            Blade::E12 => "e12",
            Blade::E123 => "e123",
        }
    }

    /// Vector blade `e_k` for `k` in `0..3`.
    pub const fn vector(k: usize) -> Blade {
        [Blade::E1, Blade::E2, Blade::E3][k]
    }

    /// Bivector blade `i e_k` for `k` in `0..3`.
    pub const fn bivector(k: usize) -> Blade {
        [Blade::E23, Blade::E31, Blade::E12][k]
    }
}

const GRADES: [usize; 8] = [0, 1, 1, 1, 2, 2, 2, 3];

// Each storage blade as (sign, bitmask of ascending generators). e31 = -e1e3.
const BLADE_BITS: [(f64, u8); 8] = [
    (1.0, 0b000),
    (1.0, 0b001),
    (1.0, 0b010),
    (1.0, 0b100),
    (1.0, 0b110),
    (-1.0, 0b101),
    (1.0, 0b011),
    (1.0, 0b111),
];

const fn blade_from_bits(bits: u8) -> (f64, usize) {
    let mut i = 0;
    while i < 8 {
        if BLADE_BITS[i].1 == bits {
            return (BLADE_BITS[i].0, i);
        }
        i += 1;
    }
    panic!("unreachable blade mask");
}

// Sign from reordering the product of two ascending generator words into
// ascending order; all generators square to +1.
const fn reorder_sign(a: u8, b: u8) -> f64 {
    let mut swaps = 0u32;
    let mut bit = 0;
    while bit < 3 {
        if b & (1 << bit) != 0 {
            let higher = (a >> (bit + 1)) as u32;
            swaps += higher.count_ones();
        }
        bit += 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

const fn build_table() -> [[(f64, usize); 8]; 8] {
    let mut table = [[(0.0, 0usize); 8]; 8];
    let mut a = 0;
    while a < 8 {
        let mut b = 0;
        while b < 8 {
            let (sa, ma) = BLADE_BITS[a];
            let (sb, mb) = BLADE_BITS[b];
            let s = sa * sb * reorder_sign(ma, mb);
            let (sr, r) = blade_from_bits(ma ^ mb);
            table[a][b] = (s * sr, r);
            b += 1;
        }
        a += 1;
    }
    table
}

/// `PRODUCT_TABLE[a][b] = (sign, c)` means `blade_a * blade_b = sign * blade_c`.
pub const PRODUCT_TABLE: [[(f64, usize); 8]; 8] = build_table();

/// Complex 3-vector on `{e1, e2, e3}`. Dot and cross never conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexVec3(pub [Complex; 3]);

impl ComplexVec3 {
    pub const ZERO: ComplexVec3 = ComplexVec3([c(0.0, 0.0); 3]);

    pub fn new(x: Complex, y: Complex, z: Complex) -> Self {
        Self([x, y, z])
    }

    pub fn from_real(v: [f64; 3]) -> Self {
        Self([c(v[0], 0.0), c(v[1], 0.0), c(v[2], 0.0)])
    }

    pub fn unit(k: usize) -> Self {
        let mut v = Self::ZERO;
        v.0[k] = c(1.0, 0.0);
        v
    }

    pub fn dot(&self, other: &Self) -> Complex {
        dot(self, other)
    }

    pub fn cross(&self, other: &Self) -> Self {
        cross(self, other)
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// Hermitian norm `sqrt(conj(v) . v)`.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn re(&self) -> [f64; 3] {
        self.0.map(|z| z.re)
    }

    pub fn im(&self) -> [f64; 3] {
        self.0.map(|z| z.im)
    }
}

/// Bilinear dot product, no conjugation.
pub fn dot(a: &ComplexVec3, b: &ComplexVec3) -> Complex {
    a.0[0] * b.0[0] + a.0[1] * b.0[1] + a.0[2] * b.0[2]
}

/// Bilinear cross product, no conjugation.
pub fn cross(a: &ComplexVec3, b: &ComplexVec3) -> ComplexVec3 {
    let [a1, a2, a3] = a.0;
    let [b1, b2, b3] = b.0;
    ComplexVec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
}

impl Add for ComplexVec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for ComplexVec3 {
    fn add_assign(&mut self, o: Self) {
        for k in 0..3 {
            self.0[k] += o.0[k];
        }
    }
}

impl Sub for ComplexVec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for ComplexVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|z| -z))
    }
}

impl Mul<Complex> for ComplexVec3 {
    type Output = Self;
    fn mul(self, s: Complex) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for ComplexVec3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }
}

impl Index<usize> for ComplexVec3 {
    type Output = Complex;
    fn index(&self, k: usize) -> &Complex {
        &self.0[k]
    }
}

impl IndexMut<usize> for ComplexVec3 {
    fn index_mut(&mut self, k: usize) -> &mut Complex {
        &mut self.0[k]
    }
}

/// Scalar-plus-vector element `U = U0 + U`, the algebra's four-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Paravector {
    pub s: Complex,
    pub v: ComplexVec3,
}

impl Paravector {
    pub fn new(s: Complex, v: ComplexVec3) -> Self {
        Self { s, v }
    }

    pub fn from_real(u: [f64; 4]) -> Self {
        Self {
            s: c(u[0], 0.0),
            v: ComplexVec3::from_real([u[1], u[2], u[3]]),
        }
    }

    /// Clifford conjugate `U0 - U`.
    pub fn bar(&self) -> Self {
        Self { s: self.s, v: -self.v }
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::ZERO;
        m[Blade::S] = self.s;
        for k in 0..3 {
            m[Blade::vector(k)] = self.v[k];
        }
        m
    }
}

/// Product of two paravectors:
/// `UV = (U0 V0 + U.V) + (U0 V + U V0) + i (U x V)`.
pub fn paravector_product(u: &Paravector, v: &Paravector) -> Multivector {
    let mut m = Multivector::ZERO;
    // same summation order as `gp`, so the two agree bit for bit
    m[Blade::S] = u.s * v.s + u.v[0] * v.v[0] + u.v[1] * v.v[1] + u.v[2] * v.v[2];
    let w = cross(&u.v, &v.v);
    for k in 0..3 {
        m[Blade::vector(k)] = u.s * v.v[k] + u.v[k] * v.s;
        m[Blade::bivector(k)] = w[k];
    }
    m
}

/// Element of the complexified algebra, dense over the eight blades.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Multivector(pub [Complex; 8]);

impl Multivector {
    pub const ZERO: Multivector = Multivector([c(0.0, 0.0); 8]);

    pub fn blade(b: Blade) -> Self {
        Self::blade_scaled(b, c(1.0, 0.0))
    }

    pub fn blade_scaled(b: Blade, s: Complex) -> Self {
        let mut m = Self::ZERO;
        m[b] = s;
        m
    }

    pub fn scalar(s: Complex) -> Self {
        Self::blade_scaled(Blade::S, s)
    }

    /// The trivector `i = e1 e2 e3`.
    pub fn i() -> Self {
        Self::blade(Blade::E123)
    }

    pub fn vector(v: &ComplexVec3) -> Self {
        let mut m = Self::ZERO;
        for k in 0..3 {
            m[Blade::vector(k)] = v[k];
        }
        m
    }

    /// Bivector `i v`.
    pub fn bivector(v: &ComplexVec3) -> Self {
        let mut m = Self::ZERO;
        for k in 0..3 {
            m[Blade::bivector(k)] = v[k];
        }
        m
    }

    /// Builds `p + i q` from two paravectors.
    pub fn from_split(p: &Paravector, q: &Paravector) -> Self {
        let mut m = p.to_multivector();
        m[Blade::E123] = q.s;
        for k in 0..3 {
            m[Blade::bivector(k)] = q.v[k];
        }
        m
    }

    /// Inverse of [`Multivector::from_split`]: returns `(p, q)` with `self = p + i q`.
    pub fn split(&self) -> (Paravector, Paravector) {
        let p = Paravector::new(self[Blade::S], self.vector_part());
        let q = Paravector::new(self[Blade::E123], self.bivector_part());
        (p, q)
    }

    pub fn vector_part(&self) -> ComplexVec3 {
        ComplexVec3([self.0[1], self.0[2], self.0[3]])
    }

    /// Dual vector `v` of the bivector part `i v`.
    pub fn bivector_part(&self) -> ComplexVec3 {
        ComplexVec3([self.0[4], self.0[5], self.0[6]])
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// Complex conjugation of the coefficients (`j -> -j`); blades untouched.
    pub fn conj_j(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn gp(&self, other: &Self) -> Self {
        gp(self, other)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Coefficient-wise comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (*self - *other).max_abs() <= tol
    }
}

/// Full geometric product.
pub fn gp(a: &Multivector, b: &Multivector) -> Multivector {
    let mut out = [c(0.0, 0.0); 8];
    for (ia, za) in a.0.iter().enumerate() {
        if *za == c(0.0, 0.0) {
            continue;
        }
        for (ib, zb) in b.0.iter().enumerate() {
            let (sign, r) = PRODUCT_TABLE[ia][ib];
            out[r] += *za * *zb * sign;
        }
    }
    Multivector(out)
}

/// Clifford conjugation: grade signs `(+, -, -, +)`, an anti-automorphism.
pub fn clifford_conjugate(a: &Multivector) -> Multivector {
    const SIGNS: [f64; 4] = [1.0, -1.0, -1.0, 1.0];
    let mut out = *a;
    for b in Blade::ALL {
        out[b] *= SIGNS[b.grade()];
    }
    out
}

/// Keeps only the blades of grade `g`.
///
/// # Panics
///
/// If `g > 3`.
pub fn grade_project(a: &Multivector, g: usize) -> Multivector {
    assert!(g <= 3, "grade {g} out of range 0..=3");
    let mut out = Multivector::ZERO;
    for b in Blade::ALL {
        if b.grade() == g {
            out[b] = a[b];
        }
    }
    out
}

impl Index<Blade> for Multivector {
    type Output = Complex;
    fn index(&self, b: Blade) -> &Complex {
        &self.0[b.index()]
    }
}

impl IndexMut<Blade> for Multivector {
    fn index_mut(&mut self, b: Blade) -> &mut Complex {
        &mut self.0[b.index()]
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self;
        for k in 0..8 {
            out.0[k] += o.0[k];
        }
        out
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, o: Self) {
        for k in 0..8 {
            self.0[k] += o.0[k];
        }
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut out = self;
        for k in 0..8 {
            out.0[k] -= o.0[k];
        }
        out
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|z| -z))
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        gp(&self, &o)
    }
}

impl Mul<Complex> for Multivector {
    type Output = Self;
    fn mul(self, s: Complex) -> Self {
        self.scale(s)
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in Blade::ALL {
            let z = self[b];
            if z.re == 0.0 && z.im == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}j){}", z.re, z.im, b.name())?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
