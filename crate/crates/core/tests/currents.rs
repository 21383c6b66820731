mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsphoton::algebra::Complex;
use rsphoton::fields::{
    compute_rs, conjugate_momentum, continuity_residual, faraday, faraday_from_rs, lagrange_residual,
    lagrangian_density, noether_current, FieldError, FourCurrent, GridSpec, LabeledPotential, LagrangianInputs,
    LagrangianKind, MomentumKind, NoetherKind, PhysicalConstants,
};
use rsphoton::modes::{labeled_potentials, one_photon_potential, ModeExpansion, ModeKey};
use rsphoton::Sign;

const NAT: PhysicalConstants = PhysicalConstants::NATURAL;

/// Lattice indices with integer `|n|^2`, so every frequency is a multiple of
/// `2 pi c / L`.
const COMMENSURATE: [[i64; 3]; 8] = [
    [1, 0, 0],
    [0, -1, 0],
    [0, 0, 2],
    [1, 2, 2],
    [2, -2, 1],
    [0, 3, 0],
    [-2, 1, 2],
    [0, 0, -1],
];

fn random_expansion(rng: &mut ChaCha8Rng, box_len: f64, count: usize, eps: Option<Sign>) -> ModeExpansion {
    let mut e = ModeExpansion::new(box_len, 0.0).unwrap();
    while e.len() < count {
        let n = COMMENSURATE[rng.gen_range(0..COMMENSURATE.len())];
        let pick = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let eps = eps.unwrap_or_else(|| pick(rng));
        let lam = pick(rng);
        e.set(ModeKey::new(n, eps, lam), rc(rng)).unwrap();
    }
    e
}

fn currents_at(comps: &[LabeledPotential], t: f64, kind: NoetherKind) -> FourCurrent {
    let shifted: Vec<_> = comps
        .iter()
        .map(|p| LabeledPotential {
            potential: p.potential.at_time(t).unwrap(),
            ..p.clone()
        })
        .collect();
    noether_current(kind, &shifted, &NAT).unwrap()
}

#[test]
fn single_modes_have_positive_density_and_unit_number() {
    let g = GridSpec::new(8, 1.0).unwrap();
    for k in [NAT, PhysicalConstants::SI] {
        for eps in Sign::BOTH {
            for lam in Sign::BOTH {
                let mut e = ModeExpansion::new(1.0, 0.0).unwrap();
                e.set(ModeKey::new([1, -1, 2], eps, lam), Complex::new(0.6, 0.8)).unwrap();
                let comps = labeled_potentials(&e, &g, &k).unwrap();
                for kind in [NoetherKind::Standard, NoetherKind::Covariant] {
                    let j = noether_current(kind, &comps, &k).unwrap();
                    assert!(j.j0.data.iter().all(|z| z.re > 0.0 && z.im.abs() < 1e-12 * z.re));
                    assert!((j.number(&k) - 1.0).abs() < 1e-12, "{kind:?} {}", j.number(&k));
                }
            }
        }
    }
}

#[test]
fn covariant_and_standard_densities_agree_in_coulomb_gauge() {
    let g = GridSpec::new(16, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let e = random_expansion(&mut rng, 1.0, 6, None);
        let comps = labeled_potentials(&e, &g, &NAT).unwrap();
        let a = noether_current(NoetherKind::Standard, &comps, &NAT).unwrap();
        let b = noether_current(NoetherKind::Covariant, &comps, &NAT).unwrap();
        let scale = a.j0.max_abs();
        assert!((&a.j0 - &b.j0).max_abs() < 1e-10 * scale);
        let total: f64 = e.modes.values().map(|z| z.norm_sqr()).sum();
        assert!((a.number(&NAT) - total).abs() < 1e-10 * total);
    }
}

#[test]
fn unlabeled_components_are_rejected() {
    let g = GridSpec::new(4, 1.0).unwrap();
    let mut e = ModeExpansion::new(1.0, 0.0).unwrap();
    e.set(ModeKey::new([1, 0, 0], Sign::Plus, Sign::Plus), Complex::new(1.0, 0.0)).unwrap();
    let pot = one_photon_potential(&e, &g, &NAT).unwrap();
    let unlabeled = LabeledPotential { eps: None, lam: None, potential: pot };
    assert!(matches!(
        noether_current(NoetherKind::Standard, &[unlabeled], &NAT),
        Err(FieldError::UnresolvedFrequencySign)
    ));
}

#[test]
fn free_continuity_converges_at_second_order() {
    let g = GridSpec::new(16, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let e = random_expansion(&mut rng, 1.0, 6, None);
    let comps = labeled_potentials(&e, &g, &NAT).unwrap();
    let t0 = 0.13;
    let residual = |dt: f64| {
        let series: Vec<_> = [-dt, 0.0, dt]
            .iter()
            .map(|s| currents_at(&comps, t0 + s, NoetherKind::Standard))
            .collect();
        continuity_residual(&series, dt, None, &NAT).unwrap().max_abs()
    };
    let dts = [0.004, 0.002, 0.001];
    let r: Vec<f64> = dts.iter().map(|dt| residual(*dt)).collect();
    for w in r.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((order - 2.0).abs() < 0.2, "order {order}, residuals {r:?}");
    }
    let n0 = currents_at(&comps, 0.0, NoetherKind::Standard).number(&NAT);
    for t in [0.1, 0.37, 2.5] {
        let n = currents_at(&comps, t, NoetherKind::Standard).number(&NAT);
        assert!((n - n0).abs() < 1e-10 * n0);
    }
}

#[test]
fn continuity_needs_three_samples() {
    let g = GridSpec::new(4, 1.0).unwrap();
    let mut e = ModeExpansion::new(1.0, 0.0).unwrap();
    e.set(ModeKey::new([1, 0, 0], Sign::Plus, Sign::Plus), Complex::new(1.0, 0.0)).unwrap();
    let comps = labeled_potentials(&e, &g, &NAT).unwrap();
    let j = currents_at(&comps, 0.0, NoetherKind::Standard);
    assert!(matches!(
        continuity_residual(&[j.clone(), j], 0.1, None, &NAT),
        Err(FieldError::TooFewTimeSamples(2))
    ));
}

#[test]
fn fermi_and_covariant_lagrangians_differ_by_a_divergence() {
    let box_len = 1.0;
    let g = GridSpec::new(16, box_len).unwrap();
    let omega0 = 2.0 * std::f64::consts::PI * NAT.c / box_len;
    let period = 2.0 * std::f64::consts::PI / omega0;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..4 {
        let e = random_expansion(&mut rng, box_len, 6, None);
        let pot = one_photon_potential(&e, &g, &NAT).unwrap();
        let samples = 16;
        let (mut avg, mut scale) = (Complex::new(0.0, 0.0), 0.0f64);
        for s in 0..samples {
            let p = pot.at_time(period * s as f64 / samples as f64).unwrap();
            let rs = compute_rs(&p, &NAT).unwrap();
            let inputs = LagrangianInputs { rs: Some(&rs), potential: Some(&p), matter: None };
            let fermi = lagrangian_density(LagrangianKind::Fermi, inputs, &NAT).unwrap();
            let cov = lagrangian_density(LagrangianKind::Cov, inputs, &NAT).unwrap();
            scale = scale.max(cov.max_abs());
            avg += (&fermi - &cov).integrate() / (samples as f64 * g.volume());
        }
        assert!(avg.norm() < 1e-10 * scale, "{avg} vs {scale}");
    }
    // a longitudinal wave has Lambda != 0 and the averages no longer agree
    let long = rsphoton::fields::PotentialWave {
        m: [1, 0, 0],
        omega: omega0,
        phi_over_c: Complex::new(0.0, 0.0),
        a: rsphoton::algebra::ComplexVec3::unit(0),
    };
    let pot = rsphoton::fields::FourPotential::from_waves(g, 0.0, vec![long]).unwrap();
    let rs = compute_rs(&pot, &NAT).unwrap();
    let inputs = LagrangianInputs { rs: Some(&rs), potential: Some(&pot), matter: None };
    let fermi = lagrangian_density(LagrangianKind::Fermi, inputs, &NAT).unwrap();
    let cov = lagrangian_density(LagrangianKind::Cov, inputs, &NAT).unwrap();
    let d = (&fermi - &cov).integrate().norm() / g.volume();
    assert!(d > 1e-3 * cov.max_abs(), "{d}");
}

#[test]
fn lagrangians_report_missing_inputs() {
    let none = LagrangianInputs::default();
    for kind in [LagrangianKind::Std, LagrangianKind::Fermi, LagrangianKind::Cov, LagrangianKind::Int] {
        assert!(matches!(lagrangian_density(kind, none, &NAT), Err(FieldError::MissingInput(_))));
    }
}

#[test]
fn faraday_tensor_matches_fields_and_is_antisymmetric() {
    let g = GridSpec::new(8, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pot = rsphoton::fields::FourPotential::from_waves(g, 0.4, random_waves(&mut rng, 4, 3)).unwrap();
    for k in [NAT, PhysicalConstants::SI] {
        let f = faraday(&pot, &k).unwrap();
        assert_eq!(f.antisymmetry_defect(), 0.0);
        let rs = compute_rs(&pot, &k).unwrap();
        let direct = faraday_from_rs(&rs, &k);
        let diff = f.data.iter().zip(&direct.data).flat_map(|(a, b)| {
            (0..4).flat_map(move |m| (0..4).map(move |n| (a[m][n] - b[m][n]).norm()))
        });
        assert!(diff.fold(0.0, f64::max) < 1e-12 * f.max_abs());
        // F^{10} = E_x / c
        let e10 = f.component(1, 0).data[5];
        assert!((e10 - rs.e.at(5)[0] / k.c).norm() < 1e-12 * rs.e.max_abs() / k.c);
    }
}

#[test]
fn free_lagrange_equations_hold_on_shell() {
    let g = GridSpec::new(16, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let e = random_expansion(&mut rng, 1.0, 5, None);
    let pot = one_photon_potential(&e, &g, &NAT).unwrap();
    for kind in [MomentumKind::Std, MomentumKind::Cov] {
        let scale = conjugate_momentum(kind, &pot, &NAT).unwrap().max_abs();
        for r in lagrange_residual(kind, &pot, &NAT).unwrap() {
            assert!(r.max_abs() < 1e-10 * scale * 20.0);
        }
    }
    // an off-shell wave violates the covariant equation
    let off = rsphoton::fields::FourPotential::from_waves(g, 0.0, random_waves(&mut rng, 1, 2)).unwrap();
    let worst = lagrange_residual(MomentumKind::Cov, &off, &NAT)
        .unwrap()
        .iter()
        .map(|r| r.max_abs())
        .fold(0.0, f64::max);
    assert!(worst > 1e-3);
}
