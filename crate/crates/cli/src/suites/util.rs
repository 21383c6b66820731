use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsphoton::algebra::{Complex, ComplexVec3};
use rsphoton::modes::{ModeExpansion, ModeKey};
use rsphoton::Sign;

/// Independent stream per suite so results do not depend on which suites run.
pub fn stream(seed: u64, salt: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(salt);
    r
}

pub fn rc(rng: &mut ChaCha8Rng) -> Complex {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn rcv(rng: &mut ChaCha8Rng) -> ComplexVec3 {
    ComplexVec3::new(rc(rng), rc(rng), rc(rng))
}

pub fn sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn lattice(rng: &mut ChaCha8Rng, max: i64) -> [i64; 3] {
    loop {
        let m = [0; 3].map(|_| rng.gen_range(-max..=max));
        if m != [0, 0, 0] {
            return m;
        }
    }
}

/// `count` distinct modes with `|n_i| <= max` and random signs.
pub fn random_state(rng: &mut ChaCha8Rng, box_len: f64, count: usize, max: i64) -> ModeExpansion {
    let mut e = ModeExpansion::new(box_len, 0.0).expect("positive box");
    while e.len() < count {
        let key = ModeKey::new(lattice(rng, max), sign(rng), sign(rng));
        e.set(key, rc(rng)).expect("nonzero index");
    }
    e
}

pub fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a broken measurement cannot pass
    it.into_iter().fold(0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}
