use rsphoton::algebra::{Complex, J};
use rsphoton::fields::{GridSpec, PhysicalConstants};
use rsphoton::modes::{expand_rs, resolved_potentials, ModeExpansion, ModeKey};
use rsphoton::quantum::{
    commutator_check, default_packets, hamiltonian_apply_modes, hamiltonian_apply_rs, matrix_commutator,
    scalar_product_k, scalar_product_x, standard_cases, Operator, SpinMatrices, VectorState,
};
use rsphoton::Sign;

use super::util::{max_of, random_state, stream};
use super::Suite;
use crate::config::RunConfig;
use crate::report::Check;

pub const CHECKS: &[&str] = &[
    "quantum.orthonormality",
    "quantum.parseval",
    "quantum.positive_definite",
    "quantum.spin_commutators",
    "quantum.eigenvalues",
    "quantum.hamiltonian_routes",
    "quantum.harness_exact",
    "quantum.harness_residual",
    "quantum.harness_order",
];

fn sp_x(a: &ModeExpansion, b: &ModeExpansion, g: &GridSpec, k: &PhysicalConstants) -> Complex {
    let pa = resolved_potentials(a, g, k).expect("resolved");
    let pb = resolved_potentials(b, g, k).expect("resolved");
    scalar_product_x(&pa, &pb, k).expect("labeled")
}

fn unit(box_len: f64, key: ModeKey) -> ModeExpansion {
    let mut e = ModeExpansion::new(box_len, 0.0).expect("positive box");
    e.set(key, Complex::new(1.0, 0.0)).expect("nonzero");
    e
}

fn keys() -> Vec<ModeKey> {
    let mut out = Vec::new();
    for n in [[1, 0, 0], [0, -2, 1], [1, 1, 1]] {
        for eps in Sign::BOTH {
            for lam in Sign::BOTH {
                out.push(ModeKey::new(n, eps, lam));
            }
        }
    }
    out
}

fn orthonormality(g: &GridSpec, k: &PhysicalConstants) -> f64 {
    let keys = keys();
    max_of(keys.iter().flat_map(|a| {
        keys.iter().map(move |b| {
            let (ua, ub) = (unit(g.length, *a), unit(g.length, *b));
            let want = if a == b { 1.0 } else { 0.0 };
            let zk = scalar_product_k(&ua, &ub).expect("same box");
            max_of([(zk - want).norm(), (sp_x(&ua, &ub, g, k) - want).norm()])
        })
    }))
}

/// Largest relative deviation of `A psi` from `a psi` for helicity, frequency
/// sign, energy and `|P|` on single modes.
fn eigenvalues(g: &GridSpec, k: &PhysicalConstants) -> f64 {
    let h = g.dk();
    max_of(keys().into_iter().flat_map(|key| {
        let exp = unit(g.length, key);
        let psi = VectorState::from_modes(&exp, key.eps);
        let q = key.n.map(|x| x as f64 * h);
        let v = psi.eval(q).expect("no domain");
        let omega = exp.omega(&key, k);
        [
            (Operator::Helicity, key.lam.value()),
            (Operator::FrequencySign, key.eps.value()),
            (Operator::Hamiltonian, key.eps.value() * k.hbar * omega),
            (Operator::MomentumMagnitude, k.hbar * omega / k.c),
        ]
        .map(|(op, want)| {
            let got = op.apply(&psi, k).eval(q).expect("away from origin");
            (got - v * want).norm() / (v.norm() * want.abs())
        })
    }))
}

fn spin_commutators() -> f64 {
    let s = SpinMatrices::new();
    max_of([(0, 1, 2), (1, 2, 0), (2, 0, 1)].map(|(a, b, c)| {
        let lhs = matrix_commutator(&s.s[a], &s.s[b]);
        let mut worst = 0.0f64;
        for r in 0..3 {
            for col in 0..3 {
                worst = worst.max((lhs[r][col] - J * s.s[c][r][col]).norm());
            }
        }
        worst
    }))
}

pub fn run(cfg: &RunConfig, g: GridSpec) -> Vec<Check> {
    let k = cfg.units.constants();
    let tol = |name: &str, d: f64| cfg.tolerance(name, d);
    let mut rng = stream(cfg.seed, Suite::Quantum as u64);
    let mut out = vec![Check::at_most("quantum.orthonormality", orthonormality(&g, &k), tol("quantum.orthonormality", 1e-12))];

    let parseval = max_of((0..10).map(|_| {
        let (a, b) = (random_state(&mut rng, g.length, 8, 3), random_state(&mut rng, g.length, 8, 3));
        let zk = scalar_product_k(&a, &b).expect("same box");
        (zk - sp_x(&a, &b, &g, &k)).norm() / zk.norm().max(1.0)
    }));
    out.push(
        Check::at_most("quantum.parseval", parseval, tol("quantum.parseval", 1e-10))
            .with_note("10 pairs of random 8-mode states"),
    );

    let violations = (0..100)
        .filter(|_| {
            let a = random_state(&mut rng, g.length, 4, 3);
            let zk = scalar_product_k(&a, &a).expect("same box");
            let zx = sp_x(&a, &a, &g, &k);
            !(zk.re > 0.0 && zx.re > 0.0 && zx.im.abs() < 1e-10 * zx.re)
        })
        .count();
    out.push(
        Check::at_most("quantum.positive_definite", violations as f64, tol("quantum.positive_definite", 0.0))
            .with_note("non-positive norms among 100 random mixed-sign states"),
    );

    out.push(Check::at_most("quantum.spin_commutators", spin_commutators(), tol("quantum.spin_commutators", 0.0)));
    out.push(
        Check::at_most("quantum.eigenvalues", eigenvalues(&g, &k), tol("quantum.eigenvalues", 1e-15))
            .with_note("relative; a few ulp from |k| evaluated two ways"),
    );

    let exp = random_state(&mut rng, g.length, 8, 3);
    let via_field = hamiltonian_apply_rs(&expand_rs(&exp, &g, &k).expect("resolved"), &k).expect("same grid");
    let via_modes = expand_rs(&hamiltonian_apply_modes(&exp, &k), &g, &k).expect("resolved");
    let routes = max_of([
        (&via_field.e - &via_modes.e).max_abs() / via_modes.e.max_abs(),
        (&via_field.b - &via_modes.b).max_abs() / via_modes.b.max_abs(),
    ]);
    out.push(Check::at_most("quantum.hamiltonian_routes", routes, tol("quantum.hamiltonian_routes", 1e-12)));

    let harness = cfg.harness.clone().unwrap_or_default();
    match commutator_check(&standard_cases(&k), &default_packets(), &harness, &k) {
        Ok(reports) => {
            let exact = max_of(reports.iter().filter(|r| r.order.is_none()).map(|r| r.residual));
            let stencil = max_of(reports.iter().filter(|r| r.order.is_some()).map(|r| r.residual));
            let order = max_of(reports.iter().filter_map(|r| r.order).map(|o| (o - 2.0).abs()));
            out.push(Check::at_most("quantum.harness_exact", exact, tol("quantum.harness_exact", 1e-12)));
            out.push(
                Check::at_most("quantum.harness_residual", stencil, tol("quantum.harness_residual", 1e-6))
                    .with_note(format!("{} pair/state reports at h = {}", reports.len(), harness.h)),
            );
            out.push(
                Check::at_most("quantum.harness_order", order, tol("quantum.harness_order", 0.3))
                    .with_note("largest |order - 2| over stencil pairs"),
            );
        }
        Err(e) => {
            for (name, d) in [("quantum.harness_exact", 1e-12), ("quantum.harness_residual", 1e-6), ("quantum.harness_order", 0.3)] {
                out.push(Check::failed(name, tol(name, d), &e));
            }
        }
    }
    out
}
