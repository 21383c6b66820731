use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rsphoton::algebra::{Complex, Multivector, J};
use rsphoton::fields::spectral::curl;
use rsphoton::fields::{
    compute_rs, gauge_transform, maxwell_residual_rs, maxwell_split, FourCurrent, FourPotential, GaugeFunction,
    GridSpec, PhysicalConstants, PotentialWave, RSField, RsRate, ScalarField, ScalarWave, Snapshot, Vec3Field,
};
use rsphoton::modes::{expand_rs, ModeExpansion, ModeKey};
use rsphoton::Sign;

use super::util::{lattice, max_of, rc, rcv, sign, stream};
use super::Suite;
use crate::config::RunConfig;
use crate::report::Check;

pub const CHECKS: &[&str] = &[
    "maxwell.split_equivalence",
    "maxwell.vacuum_plane_waves",
    "maxwell.gauge_fields",
    "maxwell.gauge_residual",
    "maxwell.gauge_lambda_shift",
    "maxwell.plane_wave_b",
    "maxwell.plane_wave_f",
    "maxwell.plane_wave_curl",
    "maxwell.plane_wave_evolution",
    "maxwell.fixture_readable",
    "maxwell.fixture_vacuum_residual",
];

fn band_limit(g: &GridSpec) -> i64 {
    (g.n as i64 / 2 - 1).min(5)
}

fn band_limited_scalar(rng: &mut ChaCha8Rng, g: GridSpec, terms: usize) -> ScalarField {
    let waves: Vec<([f64; 3], Complex)> =
        (0..terms).map(|_| (g.wavevector(lattice(rng, band_limit(&g))), rc(rng))).collect();
    ScalarField::from_fn(g, 0.0, |x| {
        waves
            .iter()
            .map(|(k, a)| *a * Complex::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]))
            .sum()
    })
}

fn band_limited_vec3(rng: &mut ChaCha8Rng, g: GridSpec) -> Vec3Field {
    Vec3Field::from_components(
        band_limited_scalar(rng, g, 3),
        band_limited_scalar(rng, g, 3),
        band_limited_scalar(rng, g, 3),
    )
}

fn random_source(rng: &mut ChaCha8Rng, g: GridSpec, k: &PhysicalConstants) -> FourCurrent {
    let rho = band_limited_scalar(rng, g, 3);
    FourCurrent::matter(&rho, band_limited_vec3(rng, g), k).expect("same grid")
}

/// A field with its rate drawn independently, so every grade is populated.
fn random_rs_field(rng: &mut ChaCha8Rng, g: GridSpec) -> RSField {
    RSField::new(band_limited_scalar(rng, g, 2), band_limited_vec3(rng, g), band_limited_vec3(rng, g))
        .and_then(|f| {
            f.with_rate(RsRate {
                scalar: band_limited_scalar(rng, g, 2),
                e: band_limited_vec3(rng, g),
                b: band_limited_vec3(rng, g),
            })
        })
        .expect("same grid")
}

fn random_waves(rng: &mut ChaCha8Rng, g: &GridSpec, count: usize) -> Vec<PotentialWave> {
    (0..count)
        .map(|_| PotentialWave {
            m: lattice(rng, band_limit(g).min(4)),
            omega: rng.gen_range(-20.0..20.0),
            phi_over_c: rc(rng),
            a: rcv(rng),
        })
        .collect()
}

fn split_equivalence(rng: &mut ChaCha8Rng, g: GridSpec, k: &PhysicalConstants) -> f64 {
    let cc = Complex::new(k.c, 0.0);
    max_of((0..20).map(|_| {
        let f = random_rs_field(rng, g);
        let src = random_source(rng, g, k);
        let graded = maxwell_residual_rs(&f, Some(&src), k).expect("rate present");
        let split = maxwell_split(&f, Some(&src), k).expect("rate present");
        max_of([
            (&graded.scalar - &split.gauss).max_abs() / split.gauss.max_abs(),
            (&graded.vector.scale(cc) - &split.ampere).max_abs() / split.ampere.max_abs(),
            (&graded.bivector - &split.faraday).max_abs() / split.faraday.max_abs(),
            (&graded.trivector.scale(cc.inv()) - &split.div_b).max_abs() / split.div_b.max_abs(),
        ])
    }))
}

/// Largest vacuum residual, graded and classical, relative to the field's
/// largest derivative.
fn vacuum_residual(f: &RSField, k: &PhysicalConstants) -> Result<f64, String> {
    let graded = maxwell_residual_rs(f, None, k).map_err(|e| e.to_string())?.max_abs();
    let split = maxwell_split(f, None, k).map_err(|e| e.to_string())?;
    let split = [split.gauss.max_abs(), split.ampere.max_abs() / k.c, split.faraday.max_abs(), split.div_b.max_abs() * k.c];
    let rate = f.rate.as_ref().ok_or("no rate")?;
    let scale = max_of([
        rate.e.max_abs() / k.c,
        rate.b.max_abs(),
        curl(&f.e).max_abs(),
        curl(&f.b).max_abs() * k.c,
    ]);
    Ok(max_of(graded.into_iter().chain(split)) / scale.max(f64::MIN_POSITIVE))
}

fn plane_waves(rng: &mut ChaCha8Rng, g: GridSpec, k: &PhysicalConstants) -> f64 {
    max_of((0..5).map(|_| {
        let mut exp = ModeExpansion::new(g.length, rng.gen_range(0.0..1.0)).expect("positive box");
        exp.set(ModeKey::new(lattice(rng, band_limit(&g).min(4)), sign(rng), sign(rng)), rc(rng)).expect("nonzero");
        vacuum_residual(&expand_rs(&exp, &g, k).expect("resolved"), k).unwrap_or(f64::NAN)
    }))
}

struct Gauge {
    fields: f64,
    residual: f64,
    lambda: f64,
}

fn gauge(rng: &mut ChaCha8Rng, g: GridSpec, k: &PhysicalConstants) -> Gauge {
    let pot = FourPotential::from_waves(g, 0.2, random_waves(rng, &g, 5)).expect("on grid");
    let src = random_source(rng, g, k);
    let f = compute_rs(&pot, k).expect("mode backed");
    let res = maxwell_residual_rs(&f, Some(&src), k).expect("rate");
    let (sf, sr) = (f.e.max_abs().max(f.b.max_abs() * k.c), res.vector.max_abs().max(res.bivector.max_abs()));
    let mut out = Gauge {
        fields: 0.0,
        residual: 0.0,
        lambda: 0.0,
    };
    for _ in 0..10 {
        let waves = (0..3)
            .map(|_| ScalarWave {
                m: lattice(rng, band_limit(&g).min(4)),
                omega: rng.gen_range(-10.0..10.0),
                amp: rc(rng),
            })
            .collect();
        let chi = GaugeFunction::new(g, waves).expect("on grid");
        let f2 = compute_rs(&gauge_transform(&pot, &chi, k.c).expect("same grid"), k).expect("mode backed");
        let res2 = maxwell_residual_rs(&f2, Some(&src), k).expect("rate");
        out.fields = max_of([out.fields, (&f2.e - &f.e).max_abs() / sf, (&f2.b - &f.b).max_abs() * k.c / sf]);
        out.residual = max_of([
            out.residual,
            (&res2.vector - &res.vector).max_abs() / sr,
            (&res2.bivector - &res.bivector).max_abs() / sr,
            (&res2.trivector - &res.trivector).max_abs() / sr,
        ]);
        let shift = &f2.lambda(k) - &f.lambda(k);
        let expected = chi.dalembertian(pot.t, k.c).scale(Complex::new(-1.0, 0.0));
        out.lambda = max_of([out.lambda, (&shift - &expected).max_abs() / expected.max_abs().max(1.0)]);
    }
    out
}

/// Relative errors of `cB = -j eps lam E`, `F = (1 - i j eps lam) E`,
/// `curl F = lam k F` and `i d_ct F = curl F`.
fn plane_wave_identities(rng: &mut ChaCha8Rng, g: GridSpec, k: &PhysicalConstants) -> [f64; 4] {
    let mut worst = [0.0f64; 4];
    for _ in 0..5 {
        let n = lattice(rng, band_limit(&g));
        for eps in Sign::BOTH {
            for lam in Sign::BOTH {
                let mut exp = ModeExpansion::new(g.length, 0.0).expect("positive box");
                exp.set(ModeKey::new(n, eps, lam), rc(rng)).expect("nonzero");
                let f = expand_rs(&exp, &g, k).expect("resolved");
                let rate = f.rate.as_ref().expect("exact rate");
                let kn = exp.plane_wave(&ModeKey::new(n, eps, lam), k).wavenumber();
                let el = eps.value() * lam.value();
                let scale = f.e.max_abs();
                let cb = f.b.scale(Complex::new(k.c, 0.0));
                worst[0] = max_of([worst[0], (&cb - &f.e.scale(-J * el)).max_abs() / scale]);
                let (ce, ccb) = (curl(&f.e), curl(&cb));
                for i in 0..g.len() {
                    let e = Multivector::vector(&f.e.at(i));
                    let fm = f.rs_vector_at(i, k);
                    let expected = e - Multivector::i() * e * (J * el);
                    let curl_f = Multivector::vector(&ce.at(i)) + Multivector::bivector(&ccb.at(i));
                    let dct = Multivector::vector(&(rate.e.at(i) * (1.0 / k.c))) + Multivector::bivector(&rate.b.at(i));
                    worst[1] = max_of([worst[1], (fm - expected).max_abs() / scale]);
                    worst[2] = max_of([worst[2], (curl_f - fm * Complex::new(lam.value() * kn, 0.0)).max_abs() / (scale * kn)]);
                    worst[3] = max_of([worst[3], (Multivector::i() * dct - curl_f).max_abs() / (scale * kn)]);
                }
            }
        }
    }
    worst
}

fn fixture_checks(cfg: &RunConfig, k: &PhysicalConstants) -> Vec<Check> {
    let Some(path) = &cfg.fixture else {
        return Vec::new();
    };
    let tol_r = cfg.tolerance("maxwell.fixture_readable", 0.0);
    let tol_v = cfg.tolerance("maxwell.fixture_vacuum_residual", 1e-10);
    let loaded = std::fs::File::open(path)
        .map_err(|e| e.to_string())
        .and_then(|f| Snapshot::read(std::io::BufReader::new(f)).map_err(|e| e.to_string()))
        .and_then(|s| s.to_rs().map_err(|e| e.to_string()));
    match loaded {
        Err(e) => vec![
            Check::failed("maxwell.fixture_readable", tol_r, &e),
            Check::failed("maxwell.fixture_vacuum_residual", tol_v, "fixture not readable"),
        ],
        Ok(f) => {
            let v = match vacuum_residual(&f, k) {
                Ok(r) => Check::at_most("maxwell.fixture_vacuum_residual", r, tol_v),
                Err(e) => Check::failed("maxwell.fixture_vacuum_residual", tol_v, e),
            };
            vec![Check::at_most("maxwell.fixture_readable", 0.0, tol_r), v]
        }
    }
}

pub fn run(cfg: &RunConfig, g: GridSpec) -> Vec<Check> {
    let k = cfg.units.constants();
    let tol = |name: &str, d: f64| cfg.tolerance(name, d);
    let mut rng = stream(cfg.seed, Suite::Maxwell as u64);
    let mut out = vec![
        Check::at_most(
            "maxwell.split_equivalence",
            split_equivalence(&mut rng, g, &k),
            tol("maxwell.split_equivalence", 1e-12),
        )
        .with_note("20 random sourced configurations, relative per grade"),
        Check::at_most("maxwell.vacuum_plane_waves", plane_waves(&mut rng, g, &k), tol("maxwell.vacuum_plane_waves", 1e-10)),
    ];
    let gg = gauge(&mut rng, g, &k);
    out.push(Check::at_most("maxwell.gauge_fields", gg.fields, tol("maxwell.gauge_fields", 1e-10)));
    out.push(Check::at_most("maxwell.gauge_residual", gg.residual, tol("maxwell.gauge_residual", 1e-10)));
    out.push(Check::at_most("maxwell.gauge_lambda_shift", gg.lambda, tol("maxwell.gauge_lambda_shift", 1e-10)));
    let pw = plane_wave_identities(&mut rng, g, &k);
    for (name, r) in ["maxwell.plane_wave_b", "maxwell.plane_wave_f", "maxwell.plane_wave_curl", "maxwell.plane_wave_evolution"]
        .iter()
        .zip(pw)
    {
        out.push(Check::at_most(name, r, tol(name, 1e-10)));
    }
    out.extend(fixture_checks(cfg, &k));
    out
}
