use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{c, Complex, ComplexVec3, J};
use crate::fields::PhysicalConstants;
use crate::sign::Sign;

use super::ops::{KDomain, Operator, Stencil, VectorState};
use super::QuantumError;

/// `(A, B)` with the expected commutator `[A, B] = sum coeff_m O_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorCase {
    pub a: Operator,
    pub b: Operator,
    pub expected: Vec<(Complex, Operator)>,
    /// Relation only holds within one frequency-sign sheet.
    pub domain_limited: bool,
}

impl CommutatorCase {
    pub fn name(&self) -> String {
        format!("[{},{}]", self.a.name(), self.b.name())
    }

    pub fn uses_stencil(&self) -> bool {
        self.a.uses_stencil() || self.b.uses_stencil() || self.expected.iter().any(|(_, o)| o.uses_stencil())
    }
}

/// The Poincare relations checked by the harness:
///
/// `[J_i, J_j] = j hbar eps_ijk J_k`, `[J_i, P_j] = j hbar eps_ijk P_k`,
/// `[J_i, K_j] = j hbar eps_ijk K_k`, `[K_i, K_j] = -j hbar eps_ijk J_k`,
/// `[K_i, P_j] = -j hbar delta_ij H / c`, `[K_i, H] = -j hbar c P_i`,
/// and the vanishing ones among `P`, `H`, `J`, helicity and `eps`.
pub fn standard_cases(k: &PhysicalConstants) -> Vec<CommutatorCase> {
    use Operator::*;
    let jh = J * k.hbar;
    let case = |a, b, expected: Vec<(Complex, Operator)>| CommutatorCase {
        a,
        b,
        expected,
        domain_limited: false,
    };
    let mut out = vec![
        case(Spin(0), Spin(1), vec![(jh, Spin(2))]),
        case(Spin(1), Spin(2), vec![(jh, Spin(0))]),
        case(Momentum(0), Momentum(1), vec![]),
        case(Momentum(2), Hamiltonian, vec![]),
        case(Helicity, Hamiltonian, vec![]),
        case(Helicity, FrequencySign, vec![]),
        case(FrequencySign, Hamiltonian, vec![]),
    ];
    for (i, j, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        out.push(case(AngularMomentum(i), AngularMomentum(j), vec![(jh, AngularMomentum(l))]));
        out.push(case(AngularMomentum(i), Momentum(j), vec![(jh, Momentum(l))]));
        out.push(case(AngularMomentum(i), Boost(j), vec![(jh, Boost(l))]));
        out.push(case(Boost(i), Boost(j), vec![(-jh, AngularMomentum(l))]));
    }
    out.push(case(AngularMomentum(0), Momentum(0), vec![]));
    out.push(case(AngularMomentum(2), Hamiltonian, vec![]));
    out.push(case(Helicity, AngularMomentum(2), vec![]));
    out.push(case(Boost(0), Momentum(0), vec![(-jh / k.c, Hamiltonian)]));
    out.push(case(Boost(0), Momentum(1), vec![]));
    for i in 0..3 {
        out.push(CommutatorCase {
            a: Boost(i),
            b: Hamiltonian,
            expected: vec![(-jh * k.c, Momentum(i))],
            domain_limited: true,
        });
    }
    out
}

/// Gaussian packet `pol exp(-|k - k0|^2 / 2 sigma^2)` on one sheet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPacket {
    pub k0: [f64; 3],
    pub sigma: f64,
    pub eps: Sign,
    pub pol: [[f64; 2]; 3],
}

impl GaussianPacket {
    /// Distance from `k0` beyond which the packet is below `1e-16` of its peak.
    pub fn support_radius(&self) -> f64 {
        self.sigma * (2.0 * 16.0 * std::f64::consts::LN_10).sqrt()
    }

    pub fn polarization(&self) -> ComplexVec3 {
        ComplexVec3::new(
            c(self.pol[0][0], self.pol[0][1]),
            c(self.pol[1][0], self.pol[1][1]),
            c(self.pol[2][0], self.pol[2][1]),
        )
    }

    /// The packet as a lattice state with step `h` on `domain`.
    pub fn state(&self, h: f64, domain: KDomain, stencil: Stencil) -> Result<VectorState, QuantumError> {
        let r = self.support_radius();
        let k0 = self.k0;
        if (0..3).any(|i| (k0[i] - domain.center[i]).abs() + r > domain.half_width) {
            return Err(QuantumError::StateTouchesBoundary);
        }
        if k0.iter().map(|x| x * x).sum::<f64>().sqrt() <= r {
            return Err(QuantumError::StateTouchesOrigin);
        }
        let (pol, s2) = (self.polarization(), 2.0 * self.sigma * self.sigma);
        Ok(VectorState::new(self.eps, h, Some(domain), move |k| {
            let d2: f64 = (0..3).map(|i| (k[i] - k0[i]).powi(2)).sum();
            pol * (-d2 / s2).exp()
        })?
        .with_stencil(stencil))
    }
}

/// Settings for [`commutator_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarnessConfig {
    /// Step used for the reported residual.
    pub h: f64,
    /// Coarse steps used to measure the convergence order, largest first,
    /// each half the previous.
    pub order_steps: Vec<f64>,
    pub stencil: Stencil,
    /// Probe points sit at `k0 + probe_offset * {-1, 0, 1}^3`. Keep it an
    /// integer multiple of every step so probes stay on the lattice.
    pub probe_offset: f64,
    /// Half width of the evaluation box around each packet centre.
    pub half_width: f64,
    /// Below this residual a pair counts as exact and no order is fitted.
    pub exact_threshold: f64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            h: 2e-4,
            order_steps: vec![0.04, 0.02, 0.01],
            stencil: Stencil::Central,
            probe_offset: 0.16,
            half_width: 3.0,
            exact_threshold: 1e-12,
        }
    }
}

/// Default test states: packets on both sheets, clear of `k = 0`.
pub fn default_packets() -> Vec<GaussianPacket> {
    vec![
        GaussianPacket {
            k0: [2.0, -1.2, 1.5],
            sigma: 0.3,
            eps: Sign::Plus,
            pol: [[0.6, 0.1], [-0.2, 0.5], [0.3, -0.4]],
        },
        GaussianPacket {
            k0: [-1.4, 2.2, -1.8],
            sigma: 0.3,
            eps: Sign::Minus,
            pol: [[0.1, -0.7], [0.4, 0.2], [-0.5, 0.0]],
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub pair: String,
    pub state: usize,
    pub residual: f64,
    /// Measured convergence order in `h`; absent for exact pairs.
    pub order: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `max |([A,B] - C) psi| / max (|A B psi| + |B A psi|)` over the probes.
fn relative_residual(
    case: &CommutatorCase,
    psi: &VectorState,
    probes: &[[f64; 3]],
    k: &PhysicalConstants,
) -> Result<f64, QuantumError> {
    let ab = case.a.apply(&case.b.apply(psi, k), k);
    let ba = case.b.apply(&case.a.apply(psi, k), k);
    let expected: Vec<VectorState> = case.expected.iter().map(|(s, o)| o.apply(psi, k).scale(*s)).collect();
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for q in probes {
        let (x, y) = (ab.eval(*q)?, ba.eval(*q)?);
        let mut r = x - y;
        for e in &expected {
            r = r - e.eval(*q)?;
        }
        worst = worst.max(r.norm());
        scale = scale.max(x.norm() + y.norm());
    }
    Ok(if scale == 0.0 { worst } else { worst / scale })
}

fn probes(center: [f64; 3], offset: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(27);
    for a in [-1.0, 0.0, 1.0] {
        for b in [-1.0, 0.0, 1.0] {
            for d in [-1.0, 0.0, 1.0] {
                out.push([center[0] + a * offset, center[1] + b * offset, center[2] + d * offset]);
            }
        }
    }
    out
}

/// Evaluates every case on every packet. Reports are sorted by pair name,
/// then state index.
pub fn commutator_check(
    cases: &[CommutatorCase],
    packets: &[GaussianPacket],
    cfg: &HarnessConfig,
    k: &PhysicalConstants,
) -> Result<Vec<CommutatorReport>, QuantumError> {
    if cfg.order_steps.iter().chain([&cfg.h]).any(|h| !(*h > 0.0 && h.is_finite())) {
        return Err(QuantumError::InvalidStep(cfg.h));
    }
    let jobs: Vec<(usize, usize)> = (0..cases.len()).flat_map(|c| (0..packets.len()).map(move |p| (c, p))).collect();
    let mut out = jobs
        .par_iter()
        .map(|&(ci, pi)| {
            let (case, packet) = (&cases[ci], &packets[pi]);
            let domain = KDomain {
                center: packet.k0,
                half_width: cfg.half_width,
            };
            let pts = probes(packet.k0, cfg.probe_offset);
            let at = |h: f64| relative_residual(case, &packet.state(h, domain, cfg.stencil)?, &pts, k);
            let residual = at(cfg.h)?;
            let order = if case.uses_stencil() && residual > cfg.exact_threshold {
                let r = cfg.order_steps.iter().map(|h| at(*h)).collect::<Result<Vec<_>, _>>()?;
                let slopes: Vec<f64> = r
                    .windows(2)
                    .zip(cfg.order_steps.windows(2))
                    .map(|(rr, hh)| (rr[0] / rr[1]).ln() / (hh[0] / hh[1]).ln())
                    .collect();
                Some(slopes.iter().sum::<f64>() / slopes.len().max(1) as f64)
            } else {
                None
            };
            Ok(CommutatorReport {
                pair: case.name(),
                state: pi,
                residual,
                order,
                note: case.domain_limited.then(|| "domain-limited".to_string()),
            })
        })
        .collect::<Result<Vec<_>, QuantumError>>()?;
    out.sort_by(|a, b| a.pair.cmp(&b.pair).then(a.state.cmp(&b.state)));
    Ok(out)
}
