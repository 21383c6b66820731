use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::plane::{one_photon_field_amplitude, one_photon_potential_amplitude, HelicityTriad, PlaneWaveMode};
use super::ModeError;
use crate::algebra::{c, Complex, ComplexVec3, J};
use crate::fields::grid::{spectrum, synthesize};
use crate::fields::{
    FourPotential, GridSpec, LabeledPotential, PhysicalConstants, PotentialWave, RSField, RsRate, ScalarField,
    Vec3Field,
};
use crate::sign::Sign;

/// Mode label: lattice index `n` (so `k = 2 pi n / L`), frequency sign, helicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeKey {
    pub n: [i64; 3],
    pub eps: Sign,
    pub lam: Sign,
}

impl ModeKey {
    pub fn new(n: [i64; 3], eps: Sign, lam: Sign) -> Self {
        Self { n, eps, lam }
    }
}

/// One entry of the JSON mode list.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeRecord {
    pub k: [i64; 3],
    pub eps: Sign,
    pub lam: Sign,
    pub re: f64,
    pub im: f64,
}

/// Amplitudes `alpha` at time `t` in a periodic box of side `box_len`.
/// The field at `t'` carries the factor `e^{-j eps omega (t' - t)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeExpansion {
    pub box_len: f64,
    pub t: f64,
    pub modes: BTreeMap<ModeKey, Complex>,
}

impl ModeExpansion {
    pub fn new(box_len: f64, t: f64) -> Result<Self, ModeError> {
        if !(box_len > 0.0 && box_len.is_finite()) {
            return Err(ModeError::InvalidBox(box_len));
        }
        Ok(Self {
            box_len,
            t,
            modes: BTreeMap::new(),
        })
    }

    /// Sets the amplitude of `key`, replacing any previous value.
    pub fn set(&mut self, key: ModeKey, amp: Complex) -> Result<(), ModeError> {
        if key.n == [0, 0, 0] {
            return Err(ModeError::OffLattice(key.n));
        }
        self.modes.insert(key, amp);
        Ok(())
    }

    pub fn get(&self, key: &ModeKey) -> Complex {
        self.modes.get(key).copied().unwrap_or(c(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn volume(&self) -> f64 {
        self.box_len.powi(3)
    }

    pub fn wavevector(&self, n: [i64; 3]) -> [f64; 3] {
        n.map(|x| 2.0 * PI * x as f64 / self.box_len)
    }

    pub fn omega(&self, key: &ModeKey, k: &PhysicalConstants) -> f64 {
        let kv = self.wavevector(key.n);
        k.c * (kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2]).sqrt()
    }

    /// The mode as an `E` plane wave with the one-photon normalization,
    /// phased so that [`super::plane_wave_e`] can be evaluated at absolute time.
    pub fn plane_wave(&self, key: &ModeKey, k: &PhysicalConstants) -> PlaneWaveMode {
        let omega = self.omega(key, k);
        let norm = one_photon_field_amplitude(omega, key.eps, self.volume(), k);
        let shift = Complex::from_polar(1.0, key.eps.value() * omega * self.t);
        PlaneWaveMode {
            k: self.wavevector(key.n),
            eps: key.eps,
            lam: key.lam,
            a: self.get(key) * norm * shift,
        }
    }

    /// Exact free evolution by `dt`.
    pub fn evolved(&self, dt: f64, k: &PhysicalConstants) -> Self {
        let modes = self
            .modes
            .iter()
            .map(|(key, a)| {
                let w = self.omega(key, k);
                (*key, a * Complex::from_polar(1.0, -key.eps.value() * w * dt))
            })
            .collect();
        Self {
            box_len: self.box_len,
            t: self.t + dt,
            modes,
        }
    }

    /// Adds the partner of every `eps = +` mode so that `E` and `B` are real.
    /// Existing `eps = -` amplitudes at partner keys are overwritten.
    pub fn with_real_partners(&self) -> Result<Self, ModeError> {
        let mut out = self.clone();
        for (key, a) in self.modes.iter().filter(|(k, _)| k.eps == Sign::Plus) {
            let (pk, pa) = real_partner(key, *a)?;
            out.modes.insert(pk, pa);
        }
        Ok(out)
    }

    pub fn records(&self) -> Vec<ModeRecord> {
        self.modes
            .iter()
            .map(|(key, a)| ModeRecord {
                k: key.n,
                eps: key.eps,
                lam: key.lam,
                re: a.re,
                im: a.im,
            })
            .collect()
    }

    pub fn from_records(box_len: f64, t: f64, records: &[ModeRecord]) -> Result<Self, ModeError> {
        let mut out = Self::new(box_len, t)?;
        for r in records {
            let key = ModeKey::new(r.k, r.eps, r.lam);
            if out.modes.contains_key(&key) {
                return Err(ModeError::DuplicateKey(key));
            }
            out.set(key, c(r.re, r.im))?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records()).expect("mode records serialize")
    }

    pub fn from_json(box_len: f64, t: f64, text: &str) -> Result<Self, ModeError> {
        let records: Vec<ModeRecord> = serde_json::from_str(text)?;
        Self::from_records(box_len, t, &records)
    }
}

/// Partner that cancels the imaginary part of `E` and `B` for the mode
/// `(n, +, lambda)`: the negative-frequency wave at `-n` with the same
/// helicity. Its amplitude carries a triad-dependent phase.
pub fn real_partner(key: &ModeKey, amp: Complex) -> Result<(ModeKey, Complex), ModeError> {
    let kv = key.n.map(|x| x as f64);
    let here = HelicityTriad::new(kv)?.polarization(key.lam);
    let there = HelicityTriad::new(kv.map(|x| -x))?.polarization(key.lam);
    let overlap = there.conj().dot(&here.conj());
    let partner = ModeKey::new(key.n.map(|x| -x), key.eps.flip(), key.lam);
    Ok((partner, -amp.conj() * overlap))
}

fn check_grid(exp: &ModeExpansion, grid: &GridSpec) -> Result<(), ModeError> {
    grid.validate()?;
    if (exp.box_len - grid.length).abs() > 1e-12 * grid.length {
        return Err(ModeError::BoxMismatch {
            expansion: exp.box_len,
            grid: grid.length,
        });
    }
    if let Some(key) = exp.modes.keys().find(|k| !grid.resolves(k.n)) {
        return Err(ModeError::OffLattice(key.n));
    }
    Ok(())
}

/// Samples `F = E + i c B` of the expansion at `exp.t`, with its exact rate.
pub fn expand_rs(exp: &ModeExpansion, grid: &GridSpec, k: &PhysicalConstants) -> Result<RSField, ModeError> {
    check_grid(exp, grid)?;
    let len = grid.len();
    // E, B, dE/dt, dB/dt spectra
    let mut spec = vec![vec![c(0.0, 0.0); len]; 12];
    for key in exp.modes.keys() {
        let mode = exp.plane_wave(key, k);
        let idx = grid.flat(key.n.map(|x| grid.bin(x)));
        let phase = Complex::from_polar(1.0, -key.eps.value() * mode.omega(k) * exp.t);
        let e = mode.polarization().scale(mode.a * phase);
        let b = e.scale(-J * (key.eps.value() * key.lam.value() / k.c));
        let rate = -J * (key.eps.value() * mode.omega(k));
        for a in 0..3 {
            spec[a][idx] += e[a];
            spec[3 + a][idx] += b[a];
            spec[6 + a][idx] += e[a] * rate;
            spec[9 + a][idx] += b[a] * rate;
        }
    }
    let mut it = spec.into_iter().map(|s| synthesize(grid, &s));
    let mut vec3 = || Vec3Field {
        grid: *grid,
        t: exp.t,
        comps: [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()],
    };
    let (e, b, de, db) = (vec3(), vec3(), vec3(), vec3());
    let f = RSField::new(ScalarField::zeros(*grid, exp.t), e, b)?;
    Ok(f.with_rate(RsRate {
        scalar: ScalarField::zeros(*grid, exp.t),
        e: de,
        b: db,
    })?)
}

fn potential_waves<'a>(
    exp: &'a ModeExpansion,
    grid: &'a GridSpec,
    k: &'a PhysicalConstants,
    filter: impl Fn(&ModeKey) -> bool + 'a,
) -> impl Iterator<Item = PotentialWave> + 'a {
    exp.modes.iter().filter(move |(key, _)| filter(key)).map(move |(key, a)| {
        let omega = exp.omega(key, k);
        let eps = key.eps.value();
        let pol = HelicityTriad::new(grid.wavevector(key.n))
            .expect("nonzero lattice index")
            .polarization(key.lam);
        // amplitudes are referenced to exp.t; waves to t = 0
        let shift = Complex::from_polar(1.0, eps * omega * exp.t);
        let amp = a * one_photon_potential_amplitude(omega, exp.volume(), k) * shift;
        PotentialWave {
            m: key.n,
            omega: eps * omega,
            phi_over_c: c(0.0, 0.0),
            a: pol.scale(amp),
        }
    })
}

/// Transverse potential `A = j alpha sqrt(hbar / (2 eps0 omega V)) e_lambda`,
/// `phi = 0`, evaluated at `exp.t`.
pub fn one_photon_potential(
    exp: &ModeExpansion,
    grid: &GridSpec,
    k: &PhysicalConstants,
) -> Result<FourPotential, ModeError> {
    check_grid(exp, grid)?;
    let waves = potential_waves(exp, grid, k, |_| true).collect();
    Ok(FourPotential::from_waves(*grid, exp.t, waves)?)
}

/// The one-photon potential split by frequency sign, as needed by the
/// Noether currents. Signs with no modes are omitted.
pub fn labeled_potentials(
    exp: &ModeExpansion,
    grid: &GridSpec,
    k: &PhysicalConstants,
) -> Result<Vec<LabeledPotential>, ModeError> {
    check_grid(exp, grid)?;
    let mut out = Vec::new();
    for eps in Sign::BOTH {
        let waves: Vec<_> = potential_waves(exp, grid, k, move |key| key.eps == eps).collect();
        if !waves.is_empty() {
            out.push(LabeledPotential::new(eps, None, FourPotential::from_waves(*grid, exp.t, waves)?));
        }
    }
    Ok(out)
}

/// The one-photon potential split by frequency sign and helicity, as needed
/// by the position-space scalar product.
pub fn resolved_potentials(
    exp: &ModeExpansion,
    grid: &GridSpec,
    k: &PhysicalConstants,
) -> Result<Vec<LabeledPotential>, ModeError> {
    check_grid(exp, grid)?;
    let mut out = Vec::new();
    for eps in Sign::BOTH {
        for lam in Sign::BOTH {
            let waves: Vec<_> = potential_waves(exp, grid, k, move |key| key.eps == eps && key.lam == lam).collect();
            if !waves.is_empty() {
                let pot = FourPotential::from_waves(*grid, exp.t, waves)?;
                out.push(LabeledPotential::new(eps, Some(lam), pot));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOptions {
    /// Largest allowed longitudinal, scalar or zero-wavevector content,
    /// relative to the peak spectral magnitude.
    pub tolerance: f64,
    /// Amplitudes below this fraction of the largest are dropped.
    pub drop_below: f64,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            drop_below: 1e-12,
        }
    }
}

/// Inverse of [`expand_rs`] for free transverse fields.
///
/// Each spectral bin gives `u = e_lambda* . E` and `v = e_lambda* . cB`;
/// the two frequency signs separate as `(u +- j lambda v) / 2`.
pub fn project_modes(
    f: &RSField,
    k: &PhysicalConstants,
    opts: ProjectionOptions,
) -> Result<ModeExpansion, ModeError> {
    let g = f.grid;
    let e_hat: Vec<Vec<Complex>> = f.e.comps.iter().map(|x| spectrum(&g, x)).collect();
    let cb_hat: Vec<Vec<Complex>> = f.b.comps.iter().map(|x| spectrum(&g, x).iter().map(|z| z * k.c).collect()).collect();
    let s_hat = spectrum(&g, &f.scalar.data);
    let at = |v: &[Vec<Complex>], i: usize| ComplexVec3::new(v[0][i], v[1][i], v[2][i]);

    let peak = (0..g.len())
        .map(|i| at(&e_hat, i).norm().max(at(&cb_hat, i).norm()).max(s_hat[i].norm()))
        .fold(0.0, f64::max);
    let mut exp = ModeExpansion::new(g.length, f.t)?;
    if peak == 0.0 {
        return Ok(exp);
    }
    let reject = |what, bin, mag: f64| -> Result<(), ModeError> {
        let fraction = mag / peak;
        if fraction > opts.tolerance {
            Err(ModeError::NotFree { what, bin, fraction })
        } else {
            Ok(())
        }
    };

    let mut found = Vec::new();
    for i in 0..g.len() {
        let n = g.lattice(i);
        let (e, cb) = (at(&e_hat, i), at(&cb_hat, i));
        reject("scalar content", n, s_hat[i].norm())?;
        if !g.resolves(n) || n == [0, 0, 0] {
            reject("unresolved content", n, e.norm().max(cb.norm()))?;
            continue;
        }
        let triad = HelicityTriad::new(g.wavevector(n))?;
        let kh = ComplexVec3::from_real(triad.k_hat);
        reject("longitudinal E", n, kh.dot(&e).norm())?;
        reject("longitudinal B", n, kh.dot(&cb).norm())?;
        let omega = k.c * g.wavevector(n).iter().map(|x| x * x).sum::<f64>().sqrt();
        for lam in Sign::BOTH {
            let pol = triad.polarization(lam).conj();
            let (u, v) = (pol.dot(&e), pol.dot(&cb));
            let jlv = J * lam.value() * v;
            for (eps, x) in [(Sign::Plus, (u + jlv) * 0.5), (Sign::Minus, (u - jlv) * 0.5)] {
                let alpha = x / one_photon_field_amplitude(omega, eps, g.volume(), k);
                found.push((ModeKey::new(n, eps, lam), alpha));
            }
        }
    }
    let biggest = found.iter().map(|(_, a)| a.norm()).fold(0.0, f64::max);
    for (key, a) in found {
        if a.norm() > opts.drop_below * biggest {
            exp.set(key, a)?;
        }
    }
    Ok(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::plane_wave_f;

    const NAT: PhysicalConstants = PhysicalConstants::NATURAL;

    fn sample() -> ModeExpansion {
        let mut e = ModeExpansion::new(2.0, 0.3).unwrap();
        e.set(ModeKey::new([1, 0, 0], Sign::Plus, Sign::Plus), c(1.0, 0.5)).unwrap();
        e.set(ModeKey::new([0, -1, 2], Sign::Minus, Sign::Plus), c(-0.2, 0.1)).unwrap();
        e.set(ModeKey::new([1, 1, 1], Sign::Plus, Sign::Minus), c(0.0, 0.7)).unwrap();
        e
    }

    #[test]
    fn json_round_trip_and_duplicates() {
        let e = sample();
        let text = e.to_json();
        assert!(text.contains("\"eps\": -1"));
        assert_eq!(ModeExpansion::from_json(2.0, 0.3, &text).unwrap(), e);
        let dup = r#"[{"k":[1,0,0],"eps":1,"lam":1,"re":1,"im":0},{"k":[1,0,0],"eps":1,"lam":1,"re":2,"im":0}]"#;
        assert!(matches!(ModeExpansion::from_json(1.0, 0.0, dup), Err(ModeError::DuplicateKey(_))));
        let bad = r#"[{"k":[1,0,0],"eps":1,"lam":0,"re":1,"im":0}]"#;
        assert!(ModeExpansion::from_json(1.0, 0.0, bad).is_err());
    }

    #[test]
    fn expansion_matches_plane_waves_pointwise() {
        let e = sample();
        let g = GridSpec::new(8, 2.0).unwrap();
        let f = expand_rs(&e, &g, &NAT).unwrap();
        for i in [0, 17, 300, 511] {
            let x = g.position(i);
            let direct = e
                .modes
                .keys()
                .map(|key| plane_wave_f(&e.plane_wave(key, &NAT), x, e.t, &NAT))
                .fold(crate::algebra::Multivector::ZERO, |acc, m| acc + m);
            assert!(f.rs_vector_at(i, &NAT).approx_eq(&direct, 1e-12));
        }
    }

    #[test]
    fn projection_inverts_expansion() {
        let e = sample();
        let g = GridSpec::new(8, 2.0).unwrap();
        let back = project_modes(&expand_rs(&e, &g, &NAT).unwrap(), &NAT, ProjectionOptions::default()).unwrap();
        assert_eq!(back.modes.len(), e.modes.len());
        for (key, a) in &e.modes {
            assert!((back.get(key) - a).norm() < 1e-10, "{key:?}");
        }
    }

    #[test]
    fn mismatched_box_and_off_lattice_are_rejected() {
        let e = sample();
        assert!(matches!(
            expand_rs(&e, &GridSpec::new(8, 1.0).unwrap(), &NAT),
            Err(ModeError::BoxMismatch { .. })
        ));
        let mut far = ModeExpansion::new(1.0, 0.0).unwrap();
        far.set(ModeKey::new([4, 0, 0], Sign::Plus, Sign::Plus), c(1.0, 0.0)).unwrap();
        assert!(matches!(
            expand_rs(&far, &GridSpec::new(8, 1.0).unwrap(), &NAT),
            Err(ModeError::OffLattice(_))
        ));
        assert!(far.set(ModeKey::new([0, 0, 0], Sign::Plus, Sign::Plus), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn evolution_is_periodic() {
        let mut e = ModeExpansion::new(1.0, 0.0).unwrap();
        let key = ModeKey::new([0, 0, 1], Sign::Minus, Sign::Plus);
        e.set(key, c(0.3, 0.4)).unwrap();
        let period = 2.0 * PI / e.omega(&key, &NAT);
        let later = e.evolved(period, &NAT);
        assert!((later.get(&key) - e.get(&key)).norm() < 1e-14);
        assert!((e.evolved(period / 2.0, &NAT).get(&key) + e.get(&key)).norm() < 1e-14);
    }
}
