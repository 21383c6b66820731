use crate::algebra::{c, Complex, ComplexVec3};

pub type Matrix3 = [[Complex; 3]; 3];

/// Spin-1 matrices `(S_i)_{jk} = -j eps_{ijk}`, so that `(a . S) b = j a x b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMatrices {
    pub s: [Matrix3; 3],
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

impl Default for SpinMatrices {
    fn default() -> Self {
        Self::new()
    }
}

impl SpinMatrices {
    pub fn new() -> Self {
        let mut s = [[[c(0.0, 0.0); 3]; 3]; 3];
        for (i, m) in s.iter_mut().enumerate() {
            for (j, row) in m.iter_mut().enumerate() {
                for (k, z) in row.iter_mut().enumerate() {
                    *z = c(0.0, -levi_civita(i, j, k));
                }
            }
        }
        Self { s }
    }

    pub fn apply(&self, i: usize, v: &ComplexVec3) -> ComplexVec3 {
        mat_vec(&self.s[i], v)
    }

    /// `(n . S) v`.
    pub fn along(&self, n: [f64; 3], v: &ComplexVec3) -> ComplexVec3 {
        (0..3).fold(ComplexVec3::ZERO, |acc, i| acc + self.apply(i, v) * n[i])
    }
}

pub fn mat_vec(m: &Matrix3, v: &ComplexVec3) -> ComplexVec3 {
    ComplexVec3::new(
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    )
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[c(0.0, 0.0); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn commutator(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let (ab, ba) = (mat_mul(a, b), mat_mul(b, a));
    let mut out = ab;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] -= ba[i][j];
        }
    }
    out
}

pub fn is_hermitian(m: &Matrix3) -> bool {
    (0..3).all(|i| (0..3).all(|j| m[i][j] == m[j][i].conj()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::J;

    #[test]
    fn spin_algebra_is_exact() {
        let s = SpinMatrices::new();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let lhs = commutator(&s.s[i], &s.s[j]);
            let rhs = s.s[k].map(|row| row.map(|z| J * z));
            assert_eq!(lhs, rhs);
        }
        assert!(s.s.iter().all(is_hermitian));
    }

    #[test]
    fn s3_raises_circular_polarization() {
        let s = SpinMatrices::new();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let v = ComplexVec3::new(c(r, 0.0), c(0.0, r), c(0.0, 0.0));
        assert_eq!(s.apply(2, &v), v);
    }

    #[test]
    fn spin_along_a_is_j_cross() {
        let s = SpinMatrices::new();
        let a = [0.3, -1.0, 2.0];
        let b = ComplexVec3::new(c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.0));
        let lhs = s.along(a, &b);
        let rhs = ComplexVec3::from_real(a).cross(&b).scale(J);
        assert!((lhs - rhs).norm() < 1e-15);
    }
}
