use rand::Rng;
use rsphoton::algebra::{paravector_product, Blade, Complex, ComplexVec3, Multivector, Paravector};

use super::util::{max_of, rc, stream};
use super::Suite;
use crate::config::RunConfig;
use crate::report::Check;

use Blade::*;

// Derived by hand from e_k e_k = 1 and e_a e_b = -e_b e_a with
// e23 = e2e3, e31 = e3e1, e12 = e1e2, i = e1e2e3.
#[rustfmt::skip]
const AUDITED: [[(i8, Blade); 8]; 8] = [
    [(1, S),    (1, E1),    (1, E2),    (1, E3),    (1, E23),   (1, E31),   (1, E12),   (1, E123)],
    [(1, E1),   (1, S),     (1, E12),   (-1, E31),  (1, E123),  (-1, E3),   (1, E2),    (1, E23)],
    [(1, E2),   (-1, E12),  (1, S),     (1, E23),   (1, E3),    (1, E123),  (-1, E1),   (1, E31)],
    [(1, E3),   (1, E31),   (-1, E23),  (1, S),     (-1, E2),   (1, E1),    (1, E123),  (1, E12)],
    [(1, E23),  (1, E123),  (-1, E3),   (1, E2),    (-1, S),    (-1, E12),  (1, E31),   (-1, E1)],
    [(1, E31),  (1, E3),    (1, E123),  (-1, E1),   (1, E12),   (-1, S),    (-1, E23),  (-1, E2)],
    [(1, E12),  (-1, E2),   (1, E1),    (1, E123),  (-1, E31),  (1, E23),   (-1, S),    (-1, E3)],
    [(1, E123), (1, E23),   (1, E31),   (1, E12),   (-1, E1),   (-1, E2),   (-1, E3),   (-1, S)],
];

pub const CHECKS: &[&str] = &[
    "algebra.blade_table",
    "algebra.i_squared",
    "algebra.i_e3",
    "algebra.trivector_central",
    "algebra.associativity",
    "algebra.paravector_product",
];

fn random_mv(rng: &mut rand_chacha::ChaCha8Rng) -> Multivector {
    let mut m = Multivector::ZERO;
    for z in m.0.iter_mut() {
        *z = rc(rng);
    }
    m
}

fn rel(a: &Multivector, b: &Multivector) -> f64 {
    (*a - *b).max_abs() / a.max_abs().max(b.max_abs()).max(f64::MIN_POSITIVE)
}

pub fn run(cfg: &RunConfig) -> Vec<Check> {
    let tol = |name: &str, d: f64| cfg.tolerance(name, d);
    let mut rng = stream(cfg.seed, Suite::Algebra as u64);
    let mut out = Vec::new();

    let mismatches = Blade::ALL
        .iter()
        .flat_map(|a| Blade::ALL.iter().map(move |b| (*a, *b)))
        .filter(|(a, b)| {
            let (s, r) = AUDITED[a.index()][b.index()];
            Multivector::blade(*a) * Multivector::blade(*b) != Multivector::blade_scaled(r, Complex::new(s as f64, 0.0))
        })
        .count();
    out.push(
        Check::at_most("algebra.blade_table", mismatches as f64, tol("algebra.blade_table", 0.0))
            .with_note("mismatching products out of 64"),
    );

    let i = Multivector::i();
    let i2 = (i * i + Multivector::scalar(Complex::new(1.0, 0.0))).max_abs();
    out.push(Check::at_most("algebra.i_squared", i2, tol("algebra.i_squared", 0.0)));
    let ie3 = (i * Multivector::blade(E3) - Multivector::blade(E12)).max_abs();
    out.push(Check::at_most("algebra.i_e3", ie3, tol("algebra.i_e3", 0.0)));
    let central = max_of(Blade::ALL.iter().map(|b| {
        let x = Multivector::blade(*b);
        (i * x - x * i).max_abs()
    }));
    out.push(Check::at_most("algebra.trivector_central", central, tol("algebra.trivector_central", 0.0)));

    let assoc = max_of((0..100).map(|_| {
        let (a, b, c) = (random_mv(&mut rng), random_mv(&mut rng), random_mv(&mut rng));
        rel(&((a * b) * c), &(a * (b * c)))
    }));
    out.push(Check::at_most("algebra.associativity", assoc, tol("algebra.associativity", 1e-12)));

    let para = max_of((0..1000).map(|_| {
        let mut p = || {
            let s = rng.gen_range(-1.0..1.0);
            let z = [0; 3].map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            Paravector::new(Complex::new(s, rng.gen_range(-1.0..1.0)), ComplexVec3(z))
        };
        let (u, v) = (p(), p());
        (u.to_multivector() * v.to_multivector() - paravector_product(&u, &v)).max_abs()
    }));
    out.push(
        Check::at_most("algebra.paravector_product", para, tol("algebra.paravector_product", 0.0))
            .with_note("1000 random pairs, largest absolute difference"),
    );
    out
}
