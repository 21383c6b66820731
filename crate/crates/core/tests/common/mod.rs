#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rsphoton::algebra::{Complex, ComplexVec3};
use rsphoton::fields::{GridSpec, PotentialWave};

pub fn rc(rng: &mut ChaCha8Rng) -> Complex {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn rcv(rng: &mut ChaCha8Rng) -> ComplexVec3 {
    ComplexVec3::new(rc(rng), rc(rng), rc(rng))
}

pub fn lattice(rng: &mut ChaCha8Rng, max: i64) -> [i64; 3] {
    loop {
        let m = [0; 3].map(|_| rng.gen_range(-max..=max));
        if m != [0, 0, 0] {
            return m;
        }
    }
}

/// Arbitrary off-shell band-limited potential waves.
pub fn random_waves(rng: &mut ChaCha8Rng, count: usize, max: i64) -> Vec<PotentialWave> {
    (0..count)
        .map(|_| PotentialWave {
            m: lattice(rng, max),
            omega: rng.gen_range(-20.0..20.0),
            phi_over_c: rc(rng),
            a: rcv(rng),
        })
        .collect()
}

/// Transverse vacuum wave with `phi = 0` and `omega = sign c |k|`.
pub fn transverse_wave(grid: &GridSpec, m: [i64; 3], sign: f64, amp: ComplexVec3, c_light: f64) -> PotentialWave {
    let k = grid.wavevector(m);
    let kn = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    let khat = ComplexVec3::from_real(k.map(|x| x / kn));
    let a = amp - khat.scale(khat.dot(&amp));
    PotentialWave {
        m,
        omega: sign * c_light * kn,
        phi_over_c: Complex::new(0.0, 0.0),
        a,
    }
}

pub fn rel(diff: f64, scale: f64) -> f64 {
    diff / scale.max(f64::MIN_POSITIVE)
}
