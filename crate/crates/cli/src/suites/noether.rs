use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rsphoton::algebra::Complex;
use rsphoton::fields::{
    compute_rs, continuity_residual, lagrangian_density, noether_current, FourCurrent, GridSpec, LabeledPotential,
    LagrangianInputs, LagrangianKind, NoetherKind, PhysicalConstants,
};
use rsphoton::modes::{labeled_potentials, one_photon_potential, ModeExpansion, ModeKey};
use rsphoton::Sign;

use super::util::{max_of, rc, sign, stream};
use super::Suite;
use crate::config::RunConfig;
use crate::report::Check;

pub const CHECKS: &[&str] = &[
    "noether.lagrangian_divergence",
    "noether.j0_positive",
    "noether.single_mode_number",
    "noether.covariant_vs_standard",
    "noether.continuity_order",
    "noether.number_conservation",
];

/// Lattice indices with integer `|n|^2`: every frequency is a multiple of
/// `2 pi c / L`, so a box period averages all cross terms out.
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

fn commensurate_state(rng: &mut ChaCha8Rng, box_len: f64, count: usize) -> ModeExpansion {
    let mut e = ModeExpansion::new(box_len, 0.0).expect("positive box");
    while e.len() < count {
        let n = COMMENSURATE[rng.gen_range(0..COMMENSURATE.len())];
        e.set(ModeKey::new(n, sign(rng), sign(rng)), rc(rng)).expect("nonzero");
    }
    e
}

fn current_at(comps: &[LabeledPotential], t: f64, k: &PhysicalConstants) -> FourCurrent {
    let shifted: Vec<_> = comps
        .iter()
        .map(|p| LabeledPotential {
            potential: p.potential.at_time(t).expect("mode backed"),
            ..p.clone()
        })
        .collect();
    noether_current(NoetherKind::Standard, &shifted, k).expect("labeled")
}

/// Box- and period-averaged `L_fermi - L_cov`, relative to `max |L_cov|`.
fn lagrangian_divergence(rng: &mut ChaCha8Rng, g: GridSpec, k: &PhysicalConstants) -> f64 {
    let period = g.length / k.c;
    let samples = 16;
    max_of((0..4).map(|_| {
        let pot = one_photon_potential(&commensurate_state(rng, g.length, 6), &g, k).expect("resolved");
        let (mut avg, mut scale) = (Complex::new(0.0, 0.0), 0.0f64);
        for s in 0..samples {
            let p = pot.at_time(period * s as f64 / samples as f64).expect("mode backed");
            let rs = compute_rs(&p, k).expect("mode backed");
            let inputs = LagrangianInputs {
                rs: Some(&rs),
                potential: Some(&p),
                matter: None,
            };
            let fermi = lagrangian_density(LagrangianKind::Fermi, inputs, k).expect("inputs");
            let cov = lagrangian_density(LagrangianKind::Cov, inputs, k).expect("inputs");
            scale = scale.max(cov.max_abs());
            avg += (&fermi - &cov).integrate() / (samples as f64 * g.volume());
        }
        avg.norm() / scale
    }))
}

pub fn run(cfg: &RunConfig, g: GridSpec) -> Vec<Check> {
    let k = cfg.units.constants();
    let tol = |name: &str, d: f64| cfg.tolerance(name, d);
    let mut rng = stream(cfg.seed, Suite::Noether as u64);
    let mut out = vec![Check::at_most(
        "noether.lagrangian_divergence",
        lagrangian_divergence(&mut rng, g, &k),
        tol("noether.lagrangian_divergence", 1e-10),
    )];

    let (mut negative, mut number) = (0usize, 0.0f64);
    for eps in Sign::BOTH {
        for lam in Sign::BOTH {
            let mut e = ModeExpansion::new(g.length, 0.0).expect("positive box");
            e.set(ModeKey::new([1, -1, 2], eps, lam), Complex::from_polar(1.0, rng.gen_range(0.0..6.0)))
                .expect("nonzero");
            let comps = labeled_potentials(&e, &g, &k).expect("resolved");
            for kind in [NoetherKind::Standard, NoetherKind::Covariant] {
                let j = noether_current(kind, &comps, &k).expect("labeled");
                negative += j.j0.data.iter().filter(|z| !(z.re > 0.0)).count();
                number = max_of([number, (j.number(&k) - 1.0).abs()]);
            }
        }
    }
    out.push(
        Check::at_most("noether.j0_positive", negative as f64, tol("noether.j0_positive", 0.0))
            .with_note("grid points with J0 <= 0 over single modes of both signs"),
    );
    out.push(Check::at_most("noether.single_mode_number", number, tol("noether.single_mode_number", 1e-12)));

    let agree = max_of((0..5).map(|_| {
        let comps = labeled_potentials(&commensurate_state(&mut rng, g.length, 6), &g, &k).expect("resolved");
        let a = noether_current(NoetherKind::Standard, &comps, &k).expect("labeled");
        let b = noether_current(NoetherKind::Covariant, &comps, &k).expect("labeled");
        (&a.j0 - &b.j0).max_abs() / a.j0.max_abs()
    }));
    out.push(Check::at_most("noether.covariant_vs_standard", agree, tol("noether.covariant_vs_standard", 1e-10)));

    let comps = labeled_potentials(&commensurate_state(&mut rng, g.length, 6), &g, &k).expect("resolved");
    let t0 = 0.13 * g.length / k.c;
    let dts = [0.004, 0.002, 0.001].map(|d| d * g.length / k.c);
    let r: Vec<f64> = dts
        .iter()
        .map(|dt| {
            let series: Vec<_> = [-dt, 0.0, *dt].iter().map(|s| current_at(&comps, t0 + s, &k)).collect();
            continuity_residual(&series, *dt, None, &k).expect("three samples").max_abs()
        })
        .collect();
    let order_dev = max_of(r.windows(2).map(|w| ((w[0] / w[1]).log2() - 2.0).abs()));
    out.push(
        Check::at_most("noether.continuity_order", order_dev, tol("noether.continuity_order", 0.2))
            .with_note("largest |order - 2| over dt = 0.004, 0.002, 0.001 L/c"),
    );
    let n0 = current_at(&comps, 0.0, &k).number(&k);
    let drift = max_of([0.1, 0.37, 2.5].iter().map(|t| (current_at(&comps, t * g.length / k.c, &k).number(&k) - n0).abs() / n0));
    out.push(Check::at_most("noether.number_conservation", drift, tol("noether.number_conservation", 1e-10)));
    out
}
