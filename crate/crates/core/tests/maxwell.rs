mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsphoton::algebra::{Complex, ComplexVec3};
use rsphoton::fields::spectral::{div, grad, poisson_solve};
use rsphoton::fields::{
    compute_rs, gauge_transform, maxwell_residual_rs, maxwell_split, wave_residual, FourCurrent, FourPotential,
    GaugeFunction, GridSpec, PhysicalConstants, PotentialSlice, RSField, RsRate, ScalarField, ScalarWave,
    Vec3Field,
};

fn band_limited_scalar(rng: &mut ChaCha8Rng, g: GridSpec, terms: usize) -> ScalarField {
    let waves: Vec<([f64; 3], Complex)> = (0..terms).map(|_| (g.wavevector(lattice(rng, 5)), rc(rng))).collect();
    ScalarField::from_fn(g, 0.0, |x| {
        waves
            .iter()
            .map(|(k, a)| *a * Complex::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]))
            .sum()
    })
}

fn random_source(rng: &mut ChaCha8Rng, g: GridSpec, k: &PhysicalConstants) -> FourCurrent {
    let rho = band_limited_scalar(rng, g, 3);
    let j = random_vec3(rng, g);
    FourCurrent::matter(&rho, j, k).unwrap()
}

fn random_vec3(rng: &mut ChaCha8Rng, g: GridSpec) -> Vec3Field {
    Vec3Field::from_components(
        band_limited_scalar(rng, g, 3),
        band_limited_scalar(rng, g, 3),
        band_limited_scalar(rng, g, 3),
    )
}

/// Arbitrary field and rate, not derived from a potential, so every grade of
/// the residual is populated.
fn random_rs_field(rng: &mut ChaCha8Rng, g: GridSpec) -> RSField {
    RSField::new(band_limited_scalar(rng, g, 2), random_vec3(rng, g), random_vec3(rng, g))
        .unwrap()
        .with_rate(RsRate {
            scalar: band_limited_scalar(rng, g, 2),
            e: random_vec3(rng, g),
            b: random_vec3(rng, g),
        })
        .unwrap()
}

#[test]
fn graded_and_classical_residuals_agree_on_random_configurations() {
    let g = GridSpec::new(32, 2.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (case, k) in [PhysicalConstants::NATURAL, PhysicalConstants::SI]
        .iter()
        .cycle()
        .take(20)
        .enumerate()
    {
        let f = random_rs_field(&mut rng, g);
        let src = random_source(&mut rng, g, k);
        let graded = maxwell_residual_rs(&f, Some(&src), k).unwrap();
        let split = maxwell_split(&f, Some(&src), k).unwrap();

        let cc = Complex::new(k.c, 0.0);
        let pairs = [
            (&graded.scalar - &split.gauss).max_abs() / split.gauss.max_abs(),
            (&graded.vector.scale(cc) - &split.ampere).max_abs() / split.ampere.max_abs(),
            (&graded.bivector - &split.faraday).max_abs() / split.faraday.max_abs(),
            (&graded.trivector.scale(cc.inv()) - &split.div_b).max_abs() / split.div_b.max_abs(),
        ];
        for (grade, r) in pairs.iter().enumerate() {
            assert!(*r < 1e-12, "case {case} grade {grade}: relative mismatch {r:e}");
        }
    }
}

#[test]
fn vacuum_plane_waves_satisfy_maxwell() {
    let g = GridSpec::new(16, 1.0).unwrap();
    let k = PhysicalConstants::NATURAL;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let m = lattice(&mut rng, 4);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let w = transverse_wave(&g, m, sign, rcv(&mut rng), k.c);
        let pot = FourPotential::from_waves(g, 0.3, vec![w]).unwrap();
        let f = compute_rs(&pot, &k).unwrap();
        assert!(f.scalar.max_abs() < 1e-10);
        let r = maxwell_residual_rs(&f, None, &k).unwrap().max_abs();
        assert!(r.iter().all(|x| *x < 1e-10), "{r:?}");
        let s = maxwell_split(&f, None, &k).unwrap().max_abs();
        assert!(s.iter().all(|x| *x < 1e-10), "{s:?}");
        let (ws, wv) = wave_residual(&pot, None, &k).unwrap();
        assert!(ws.max_abs() < 1e-9 && wv.max_abs() < 1e-9);
    }
}

#[test]
fn gauge_transformations_leave_fields_and_residuals_unchanged() {
    let g = GridSpec::new(16, 1.5).unwrap();
    let k = PhysicalConstants::NATURAL;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pot = FourPotential::from_waves(g, 0.2, random_waves(&mut rng, 5, 4)).unwrap();
    let src = random_source(&mut rng, g, &k);
    let f = compute_rs(&pot, &k).unwrap();
    let res = maxwell_residual_rs(&f, Some(&src), &k).unwrap();
    for _ in 0..10 {
        let chi = GaugeFunction::new(
            g,
            (0..3)
                .map(|_| ScalarWave {
                    m: lattice(&mut rng, 4),
                    omega: rng.gen_range(-10.0..10.0),
                    amp: rc(&mut rng),
                })
                .collect(),
        )
        .unwrap();
        let pot2 = gauge_transform(&pot, &chi, k.c).unwrap();
        let f2 = compute_rs(&pot2, &k).unwrap();
        assert!((&f2.e - &f.e).max_abs() < 1e-10);
        assert!((&f2.b - &f.b).max_abs() < 1e-10);
        let res2 = maxwell_residual_rs(&f2, Some(&src), &k).unwrap();
        assert!((&res2.vector - &res.vector).max_abs() < 1e-10);
        assert!((&res2.bivector - &res.bivector).max_abs() < 1e-10);
        assert!((&res2.trivector - &res.trivector).max_abs() < 1e-10);
        // only the scalar grade sees Lambda
        let shift = &f2.lambda(&k) - &f.lambda(&k);
        let expected = chi.dalembertian(pot.t, k.c).scale(Complex::new(-1.0, 0.0));
        assert!((&shift - &expected).max_abs() < 1e-10);
    }
}

#[test]
fn gauge_transform_of_grid_samples_matches_mode_route() {
    let g = GridSpec::new(8, 1.0).unwrap();
    let k = PhysicalConstants::NATURAL;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pot = FourPotential::from_waves(g, 0.0, random_waves(&mut rng, 3, 2)).unwrap();
    let dt = 1e-4;
    let slices: Vec<PotentialSlice> = [-dt, 0.0, dt].iter().map(|s| pot.at_time(*s).unwrap().sample()).collect();
    let sampled = FourPotential::from_samples(g, 0.0, dt, slices).unwrap();
    let chi = GaugeFunction::new(g, vec![ScalarWave { m: [1, 0, -1], omega: 2.0, amp: Complex::new(0.5, 0.2) }])
        .unwrap();
    let a = compute_rs(&gauge_transform(&sampled, &chi, k.c).unwrap(), &k).unwrap();
    let b = compute_rs(&sampled, &k).unwrap();
    assert!((&a.e - &b.e).max_abs() < 1e-6 * b.e.max_abs());
}

#[test]
fn gaussian_charge_bump_satisfies_gauss_law() {
    // narrow enough to be periodic, wide enough to be resolved
    let g = GridSpec::new(64, 1.0).unwrap();
    let k = PhysicalConstants::SI;
    let sigma = 0.06;
    let bump = ScalarField::from_fn(g, 0.0, |x| {
        let r2: f64 = x.iter().map(|xi| (xi - 0.5).powi(2)).sum();
        Complex::new(1e-9 * (-r2 / (2.0 * sigma * sigma)).exp(), 0.0)
    });
    let mean = bump.integrate() / g.volume();
    let rho = bump.map(|z| z - mean);
    // laplacian(phi) = -rho/eps0
    let phi = poisson_solve(&rho.scale(Complex::new(-1.0 / k.eps0, 0.0)));
    let slice = PotentialSlice {
        phi_over_c: phi.scale(Complex::new(1.0 / k.c, 0.0)),
        a: Vec3Field::zeros(g, 0.0),
    };
    let pot = FourPotential::from_samples(g, 0.0, 1.0, vec![slice.clone(), slice]).unwrap();
    let f = compute_rs(&pot, &k).unwrap();
    let e_direct = grad(&phi).scale(Complex::new(-1.0, 0.0));
    assert!((&f.e - &e_direct).max_abs() <= 1e-9 * e_direct.max_abs());
    let z = Vec3Field::zeros(g, 0.0);
    let f = f
        .with_rate(RsRate { scalar: ScalarField::zeros(g, 0.0), e: z.clone(), b: z.clone() })
        .unwrap();
    let src = FourCurrent::matter(&rho, z, &k).unwrap();
    let split = maxwell_split(&f, Some(&src), &k).unwrap();
    let scale = div(&f.e).max_abs();
    assert!(split.gauss.max_abs() < 1e-10 * scale);
    let graded = maxwell_residual_rs(&f, Some(&src), &k).unwrap();
    assert!(graded.scalar.max_abs() < 1e-10 * scale);
    // field points away from a positive charge
    let probe = g.flat([40, 32, 32]);
    assert!(f.e.at(probe)[0].re > 0.0);
}

#[test]
fn rs_field_from_snapshots_recovers_the_rate() {
    let g = GridSpec::new(8, 1.0).unwrap();
    let k = PhysicalConstants::NATURAL;
    let w = transverse_wave(&g, [1, 1, 0], 1.0, ComplexVec3::unit(2), k.c);
    let pot = FourPotential::from_waves(g, 0.0, vec![w]).unwrap();
    let dt = 1e-4;
    let at = |t: f64| compute_rs(&pot.at_time(t).unwrap(), &k).unwrap();
    let approx: RSField = RSField::from_snapshots(&at(-dt), &at(0.0), &at(dt), dt).unwrap();
    let exact = at(0.0);
    let de = &approx.rate.as_ref().unwrap().e - &exact.rate.as_ref().unwrap().e;
    assert!(de.max_abs() < 1e-6 * exact.rate.as_ref().unwrap().e.max_abs());
}
