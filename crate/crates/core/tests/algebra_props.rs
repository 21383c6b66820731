use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsphoton::algebra::*;

use Blade::*;

// Hand-derived from e_k e_k = 1, e_a e_b = -e_b e_a, e23 = e2e3, e31 = e3e1,
// e12 = e1e2, i = e1e2e3. Row = left factor, column = right factor.
#[rustfmt::skip]
const AUDITED: [[(i8, Blade); 8]; 8] = [
    // 1        e1          e2          e3          e23         e31         e12         i
    [(1, S),    (1, E1),    (1, E2),    (1, E3),    (1, E23),   (1, E31),   (1, E12),   (1, E123)],
    [(1, E1),   (1, S),     (1, E12),   (-1, E31),  (1, E123),  (-1, E3),   (1, E2),    (1, E23)],
    [(1, E2),   (-1, E12),  (1, S),     (1, E23),   (1, E3),    (1, E123),  (-1, E1),   (1, E31)],
    [(1, E3),   (1, E31),   (-1, E23),  (1, S),     (-1, E2),   (1, E1),    (1, E123),  (1, E12)],
    [(1, E23),  (1, E123),  (-1, E3),   (1, E2),    (-1, S),    (-1, E12),  (1, E31),   (-1, E1)],
    [(1, E31),  (1, E3),    (1, E123),  (-1, E1),   (1, E12),   (-1, S),    (-1, E23),  (-1, E2)],
    [(1, E12),  (-1, E2),   (1, E1),    (1, E123),  (-1, E31),  (1, E23),   (-1, S),    (-1, E3)],
    [(1, E123), (1, E23),   (1, E31),   (1, E12),   (-1, E1),   (-1, E2),   (-1, E3),   (-1, S)],
];

fn random_mv(rng: &mut ChaCha8Rng) -> Multivector {
    let mut m = Multivector::ZERO;
    for z in m.0.iter_mut() {
        *z = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    m
}

fn rel_close(a: &Multivector, b: &Multivector, tol: f64) -> bool {
    let scale = a.max_abs().max(b.max_abs()).max(1.0);
    (*a - *b).max_abs() <= tol * scale
}

#[test]
fn all_64_blade_products_match_audited_table() {
    for a in Blade::ALL {
        for b in Blade::ALL {
            let (sign, blade) = AUDITED[a.index()][b.index()];
            let expect = Multivector::blade_scaled(blade, Complex::new(sign as f64, 0.0));
            let got = Multivector::blade(a) * Multivector::blade(b);
            assert_eq!(got, expect, "{} * {}", a.name(), b.name());
        }
    }
}

#[test]
fn associativity_on_seeded_random_multivectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let (a, b, cc) = (random_mv(&mut rng), random_mv(&mut rng), random_mv(&mut rng));
        assert!(rel_close(&((a * b) * cc), &(a * (b * cc)), 1e-12));
    }
}

#[test]
fn trivector_is_central() {
    for b in Blade::ALL {
        let x = Multivector::blade(b);
        assert_eq!(Multivector::i() * x, x * Multivector::i(), "{}", b.name());
    }
}

#[test]
fn unit_vector_products_follow_dot_plus_i_cross() {
    for a in 0..3 {
        for b in 0..3 {
            let ea = ComplexVec3::unit(a);
            let eb = ComplexVec3::unit(b);
            let mut expect = Multivector::scalar(dot(&ea, &eb));
            expect += Multivector::i() * Multivector::vector(&cross(&ea, &eb));
            let got = Multivector::blade(Blade::vector(a)) * Multivector::blade(Blade::vector(b));
            assert_eq!(got, expect);
        }
    }
}

#[test]
fn split_representation_multiplies_like_complex_numbers() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let x = random_mv(&mut rng);
        let y = random_mv(&mut rng);
        let (p1, q1) = x.split();
        let (p2, q2) = y.split();
        let pp = |a: &Paravector, b: &Paravector| a.to_multivector() * b.to_multivector();
        let real = pp(&p1, &p2) - pp(&q1, &q2);
        let imag = pp(&p1, &q2) + pp(&q1, &p2);
        let expect = real + Multivector::i() * imag;
        assert!(rel_close(&(x * y), &expect, 1e-12));
        assert_eq!(Multivector::from_split(&p1, &q1), x);
    }
}

fn arb_complex() -> impl Strategy<Value = Complex> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(r, i)| Complex::new(r, i))
}

fn arb_mv() -> impl Strategy<Value = Multivector> {
    prop::array::uniform8(arb_complex()).prop_map(Multivector)
}

fn arb_paravector() -> impl Strategy<Value = Paravector> {
    prop::array::uniform4(arb_complex())
        .prop_map(|z| Paravector::new(z[0], ComplexVec3::new(z[1], z[2], z[3])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gp_restricted_to_paravectors_equals_paravector_product(u in arb_paravector(), v in arb_paravector()) {
        let via_gp = u.to_multivector() * v.to_multivector();
        let via_rule = paravector_product(&u, &v);
        prop_assert_eq!(via_gp, via_rule);
        prop_assert_eq!(grade_project(&via_rule, 3), Multivector::ZERO);
    }
}

proptest! {
    #[test]
    fn conjugation_is_an_involutive_anti_automorphism(a in arb_mv(), b in arb_mv()) {
        prop_assert_eq!(clifford_conjugate(&clifford_conjugate(&a)), a);
        let lhs = clifford_conjugate(&(a * b));
        let rhs = clifford_conjugate(&b) * clifford_conjugate(&a);
        prop_assert!(rel_close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn grade_projections_partition(a in arb_mv()) {
        let sum = (0..4).map(|g| grade_project(&a, g)).fold(Multivector::ZERO, |acc, x| acc + x);
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn coefficient_j_commutes_with_gp(a in arb_mv(), b in arb_mv()) {
        let lhs = a.scale(J) * b;
        let rhs = (a * b).scale(J);
        let mid = a * b.scale(J);
        prop_assert!(rel_close(&lhs, &rhs, 1e-12));
        prop_assert!(rel_close(&mid, &rhs, 1e-12));
    }

    #[test]
    fn cross_of_self_vanishes(z in prop::array::uniform3(arb_complex())) {
        let a = ComplexVec3(z);
        prop_assert!(cross(&a, &a).norm() < 1e-12);
    }
}
