use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{c, Complex, ComplexVec3, Multivector, J};
use crate::fields::spectral::curl;
use crate::fields::{PhysicalConstants, RSField, Vec3Field};
use crate::modes::{HelicityTriad, ModeExpansion};
use crate::sign::Sign;

use super::spin::SpinMatrices;
use super::QuantumError;

type Amplitude = dyn Fn([f64; 3]) -> Result<ComplexVec3, QuantumError> + Send + Sync;

/// Axis-aligned box of wave vectors where a state may be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KDomain {
    pub center: [f64; 3],
    pub half_width: f64,
}

impl KDomain {
    pub fn contains(&self, k: [f64; 3]) -> bool {
        (0..3).all(|i| (k[i] - self.center[i]).abs() <= self.half_width)
    }
}

/// Finite-difference rule for `d/dk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stencil {
    /// `(f(k+h) - f(k-h)) / 2h`, second order.
    #[default]
    Central,
    /// Richardson combination of steps `h` and `2h`, fourth order.
    Richardson,
}

/// Vector-valued momentum-space function `psi(k)` on one frequency-sign
/// sheet, with the lattice step `h` used by k-derivatives.
#[derive(Clone)]
pub struct VectorState {
    pub eps: Sign,
    pub h: f64,
    pub stencil: Stencil,
    pub domain: Option<KDomain>,
    f: Arc<Amplitude>,
}

impl fmt::Debug for VectorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorState")
            .field("eps", &self.eps)
            .field("h", &self.h)
            .field("stencil", &self.stencil)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl VectorState {
    pub fn new(
        eps: Sign,
        h: f64,
        domain: Option<KDomain>,
        f: impl Fn([f64; 3]) -> ComplexVec3 + Send + Sync + 'static,
    ) -> Result<Self, QuantumError> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(QuantumError::InvalidStep(h));
        }
        Ok(Self {
            eps,
            h,
            stencil: Stencil::Central,
            domain,
            f: Arc::new(move |k| Ok(f(k))),
        })
    }

    pub fn with_stencil(mut self, stencil: Stencil) -> Self {
        self.stencil = stencil;
        self
    }

    /// The `eps` sheet of a mode expansion, `psi(k) = sum_lambda alpha e_lambda(k_hat)`,
    /// defined on the box's reciprocal lattice. Off-lattice points evaluate to zero.
    pub fn from_modes(exp: &ModeExpansion, eps: Sign) -> Self {
        let exp = exp.clone();
        let h = 2.0 * std::f64::consts::PI / exp.box_len;
        let f = move |k: [f64; 3]| {
            let n = k.map(|x| (x / h).round() as i64);
            let on_lattice = (0..3).all(|i| (k[i] - n[i] as f64 * h).abs() < 1e-9 * h);
            if !on_lattice || n == [0, 0, 0] {
                return Ok(ComplexVec3::ZERO);
            }
            let triad = HelicityTriad::new(k).map_err(|_| QuantumError::ExcludedPoint(k))?;
            Ok(Sign::BOTH.iter().fold(ComplexVec3::ZERO, |acc, lam| {
                let a = exp.get(&crate::modes::ModeKey::new(n, eps, *lam));
                acc + triad.polarization(*lam).scale(a)
            }))
        };
        Self {
            eps,
            h,
            stencil: Stencil::Central,
            domain: None,
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, k: [f64; 3]) -> Result<ComplexVec3, QuantumError> {
        if let Some(d) = &self.domain {
            if !d.contains(k) {
                return Err(QuantumError::BoundaryContact(k));
            }
        }
        (self.f)(k)
    }

    fn derived(&self, f: impl Fn([f64; 3]) -> Result<ComplexVec3, QuantumError> + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(f),
            ..self.clone()
        }
    }

    /// `d psi / d k_axis` with the state's stencil.
    pub fn derivative(&self, k: [f64; 3], axis: usize) -> Result<ComplexVec3, QuantumError> {
        let at = |s: f64| {
            let mut q = k;
            q[axis] += s;
            self.eval(q)
        };
        let h = self.h;
        let central = |s: f64| -> Result<ComplexVec3, QuantumError> { Ok((at(s)? - at(-s)?) * (0.5 / s)) };
        match self.stencil {
            Stencil::Central => central(h),
            Stencil::Richardson => Ok((central(h)? * 4.0 - central(2.0 * h)?) * (1.0 / 3.0)),
        }
    }

    pub fn scale(&self, s: Complex) -> Self {
        let me = self.clone();
        self.derived(move |k| Ok(me.eval(k)?.scale(s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        self.derived(move |k| Ok(a.eval(k)? + b.eval(k)?))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        self.derived(move |k| Ok(a.eval(k)? - b.eval(k)?))
    }
}

/// Operators of the momentum-space representation. Indices are 0-based axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operator {
    /// `hbar k_i`
    Momentum(usize),
    /// `hbar |k|`
    MomentumMagnitude,
    /// `hbar S_i`
    Spin(usize),
    /// `(S . k) / |k|`
    Helicity,
    /// Multiplies the sheet by its `eps`.
    FrequencySign,
    /// `eps c hbar |k|`
    Hamiltonian,
    /// `-j hbar (k x grad_k)_i + hbar S_i`
    AngularMomentum(usize),
    /// `eps (-j hbar |k| d/dk_i - hbar (k_hat x S)_i)`
    Boost(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    SpectralMultiplier,
    PolarizationMatrix,
    KDerivativeStencil,
    Composition,
}

impl Operator {
    pub fn name(&self) -> String {
        match self {
            Operator::Momentum(i) => format!("P{}", i + 1),
            Operator::MomentumMagnitude => "|P|".into(),
            Operator::Spin(i) => format!("S{}", i + 1),
            Operator::Helicity => "helicity".into(),
            Operator::FrequencySign => "eps".into(),
            Operator::Hamiltonian => "H".into(),
            Operator::AngularMomentum(i) => format!("J{}", i + 1),
            Operator::Boost(i) => format!("K{}", i + 1),
        }
    }

    pub fn representation(&self) -> Representation {
        match self {
            Operator::Momentum(_) | Operator::MomentumMagnitude | Operator::FrequencySign | Operator::Hamiltonian => {
                Representation::SpectralMultiplier
            }
            Operator::Spin(_) => Representation::PolarizationMatrix,
            Operator::Helicity => Representation::Composition,
            Operator::AngularMomentum(_) | Operator::Boost(_) => Representation::KDerivativeStencil,
        }
    }

    pub fn uses_stencil(&self) -> bool {
        self.representation() == Representation::KDerivativeStencil
    }

    pub fn apply(&self, psi: &VectorState, k: &PhysicalConstants) -> VectorState {
        let op = *self;
        let s = SpinMatrices::new();
        let (hbar, cl) = (k.hbar, k.c);
        let eps = psi.eps.value();
        let me = psi.clone();
        psi.derived(move |q| {
            let norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
            let v = me.eval(q)?;
            Ok(match op {
                Operator::Momentum(i) => v * (hbar * q[i]),
                Operator::MomentumMagnitude => v * (hbar * norm),
                Operator::Spin(i) => s.apply(i, &v) * hbar,
                Operator::Helicity => {
                    if norm == 0.0 {
                        return Err(QuantumError::ExcludedPoint(q));
                    }
                    s.along(q.map(|x| x / norm), &v)
                }
                Operator::FrequencySign => v * eps,
                Operator::Hamiltonian => v * (eps * cl * hbar * norm),
                Operator::AngularMomentum(i) => {
                    let (a, b) = ((i + 1) % 3, (i + 2) % 3);
                    let orbital = me.derivative(q, b)? * q[a] - me.derivative(q, a)? * q[b];
                    orbital.scale(-J * hbar) + s.apply(i, &v) * hbar
                }
                Operator::Boost(i) => {
                    if norm == 0.0 {
                        return Err(QuantumError::ExcludedPoint(q));
                    }
                    let (a, b) = ((i + 1) % 3, (i + 2) % 3);
                    // (k_hat x S)_i = k_hat_a S_b - k_hat_b S_a
                    let spin = (s.apply(b, &v) * q[a] - s.apply(a, &v) * q[b]) * (1.0 / norm);
                    (me.derivative(q, i)?.scale(-J * (hbar * norm)) - spin * hbar) * eps
                }
            })
        })
    }
}

/// `H psi` on a mode expansion: each amplitude times `eps hbar omega_k`.
pub fn hamiltonian_apply_modes(exp: &ModeExpansion, k: &PhysicalConstants) -> ModeExpansion {
    let mut out = exp.clone();
    for (key, a) in out.modes.iter_mut() {
        *a *= key.eps.value() * k.hbar * exp.omega(key, k);
    }
    out
}

/// `H F = -j i hbar c curl F`, evaluated with the geometric product.
///
/// The result is returned in the same `E + i c B` layout; its `scalar` part
/// is zero and it carries no rate.
pub fn hamiltonian_apply_rs(f: &RSField, k: &PhysicalConstants) -> Result<RSField, QuantumError> {
    let (ce, cb) = (curl(&f.e), curl(&f.b));
    let pre = Multivector::i() * (-J * (k.hbar * k.c));
    let mut e = Vec3Field::zeros(f.grid, f.t);
    let mut b = Vec3Field::zeros(f.grid, f.t);
    for i in 0..f.grid.len() {
        let curl_f = Multivector::vector(&ce.at(i)) + Multivector::bivector(&(cb.at(i) * k.c));
        let out = pre * curl_f;
        e.set(i, out.vector_part());
        b.set(i, out.bivector_part() * (1.0 / k.c));
    }
    Ok(RSField::new(f.scalar.map(|_| c(0.0, 0.0)), e, b)?)
}
