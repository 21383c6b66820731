use crate::algebra::{c, Complex, J};
use crate::fields::{compute_rs, LabeledPotential, PhysicalConstants};
use crate::modes::ModeExpansion;

use super::QuantumError;

/// `sum_{eps, lambda} sum_k conj(a1) a2` over discrete amplitudes.
///
/// With `a = L^{3/2} alpha` this is the lattice form of
/// `sum integral dk/(2 pi)^3 a1* a2`.
pub fn scalar_product_k(a: &ModeExpansion, b: &ModeExpansion) -> Result<Complex, QuantumError> {
    if (a.box_len - b.box_len).abs() > 1e-12 * a.box_len {
        return Err(QuantumError::LatticeMismatch(a.box_len, b.box_len));
    }
    Ok(a
        .modes
        .iter()
        .filter_map(|(key, x)| b.modes.get(key).map(|y| x.conj() * y))
        .sum())
}

/// `-(2 j eps0 / hbar) sum_{eps, lambda} eps integral A1* . E2 dx`, diagonal
/// in `(eps, lambda)`.
///
/// Every component must carry both labels.
pub fn scalar_product_x(
    a: &[LabeledPotential],
    b: &[LabeledPotential],
    k: &PhysicalConstants,
) -> Result<Complex, QuantumError> {
    let labels = |p: &LabeledPotential| match (p.eps, p.lam) {
        (Some(e), Some(l)) => Ok((e, l)),
        _ => Err(QuantumError::UnresolvedFrequencySign),
    };
    let mut total = c(0.0, 0.0);
    for pa in a {
        let la = labels(pa)?;
        for pb in b {
            if labels(pb)? != la {
                continue;
            }
            pa.potential.grid.check_same(&pb.potential.grid)?;
            let e2 = compute_rs(&pb.potential, k)?.e;
            let a1 = pa.potential.sample().a.conj();
            total += a1.dot(&e2).integrate() * la.0.value();
        }
    }
    Ok(total * (-J * (2.0 * k.eps0 / k.hbar)))
}
