//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fail.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rsphoton::dynamics::{
    build_pulse, causality_scan, evolution_series, evolve, norm_drift, EvolutionPlan, PulseConstruction, PulseScenario,
};
use rsphoton::fields::{GridSpec, PhysicalConstants, Snapshot};
use rsphoton::modes::{expand_rs, ModeExpansion, ModeKey};
use rsphoton::Sign;
use rsphoton_cli::config::RunConfig;
use rsphoton_cli::report::{Check, SuiteResult};
use rsphoton_cli::suites::{run_suite, Suite};

struct Line {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn pick<'a>(r: &'a SuiteResult, names: &[&str]) -> Vec<&'a Check> {
    names
        .iter()
        .map(|n| r.checks.iter().find(|c| c.name == *n).unwrap_or_else(|| panic!("missing check {n}")))
        .collect()
}

fn from_checks(id: u32, title: &'static str, checks: &[&Check], extra: Option<(bool, String)>) -> Line {
    let mut detail: Vec<String> =
        checks.iter().map(|c| format!("{}={:.2e}<={:.0e}", c.name.split('.').nth(1).unwrap(), c.measured, c.tolerance)).collect();
    let mut pass = checks.iter().all(|c| c.pass);
    if let Some((ok, d)) = extra {
        pass &= ok;
        detail.push(d);
    }
    Line {
        id,
        title,
        pass,
        detail: detail.join(" "),
    }
}

fn timed(suite: Suite, cfg: &RunConfig) -> (SuiteResult, f64) {
    let t = Instant::now();
    let r = run_suite(suite, cfg).expect("default config is valid");
    (r, t.elapsed().as_secs_f64())
}

fn dynamics() -> (bool, String) {
    let k = PhysicalConstants::NATURAL;
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;

    // one eps = + mode over 100 periods
    let mut e = ModeExpansion::new(1.0, 0.0).unwrap();
    let key = ModeKey::new([1, 2, -1], Sign::Plus, Sign::Minus);
    e.set(key, rsphoton::algebra::Complex::new(0.8, 0.6)).unwrap();
    let period = 2.0 * std::f64::consts::PI / e.omega(&key, &k);
    let long = EvolutionPlan::new(e.clone(), 0.0, period / 8.0, 800, 1).unwrap();
    let drift = norm_drift(&evolve(&long, &k).unwrap()).unwrap();
    ok &= drift < 1e-12;
    notes.push(format!("norm_drift={drift:.1e}"));

    let g = GridSpec::new(32, 1.0).unwrap();
    let mut multi = e;
    multi.set(ModeKey::new([0, 3, 1], Sign::Minus, Sign::Plus), rsphoton::algebra::Complex::new(-0.3, 0.2)).unwrap();
    multi.set(ModeKey::new([-2, 0, 4], Sign::Plus, Sign::Plus), rsphoton::algebra::Complex::new(0.1, -0.5)).unwrap();
    let series = evolution_series(&EvolutionPlan::new(multi, 0.0, 0.05, 40, 4).unwrap(), &g, &k).unwrap();
    let residual = series.iter().map(|s| s.residual).fold(0.0, f64::max);
    ok &= residual < 1e-10;
    notes.push(format!("curl_residual={residual:.1e}"));

    let center = [0.5; 3];
    let scan = |c: PulseConstruction, r0: Option<f64>| {
        let s = PulseScenario::new(2.5 * g.dx(), center, c);
        let plan = EvolutionPlan::new(build_pulse(&s, &g, &k).unwrap(), 0.0, 0.01, 14, 1).unwrap();
        causality_scan(&evolve(&plan, &k).unwrap(), &g, center, r0, 1e-6, &k).unwrap()
    };
    let real = scan(PulseConstruction::RealConjugatePair, None);
    let analytic = scan(PulseConstruction::PositiveFrequencyOnly, Some(real.r0));
    let before_contact = real.samples.iter().filter(|s| !s.truncated).count();
    ok &= real.max_imaginary < 1e-12 && real.max_exterior < 1e-6 && before_contact > 1;
    let ordered = analytic.samples.iter().zip(&real.samples).skip(1).all(|(a, r)| a.exterior > r.exterior);
    ok &= ordered;
    notes.push(format!(
        "real_imag={:.1e} real_exterior={:.1e} ({} snapshots before contact) analytic_larger_at_all_t={}",
        real.max_imaginary, real.max_exterior, before_contact, ordered
    ));
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 120.0;
    notes.push(format!("runtime={secs:.1}s<120s"));
    (ok, notes.join(" "))
}

fn rsphoton(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rsphoton")).args(args).output().expect("binary runs")
}

fn write_fixture(dir: &Path) -> std::path::PathBuf {
    let k = PhysicalConstants::NATURAL;
    let g = GridSpec::new(16, 1.0).unwrap();
    let mut e = ModeExpansion::new(1.0, 0.1).unwrap();
    e.set(ModeKey::new([1, 0, 2], Sign::Plus, Sign::Plus), rsphoton::algebra::Complex::new(1.0, 0.0)).unwrap();
    e.set(ModeKey::new([0, -1, 1], Sign::Minus, Sign::Minus), rsphoton::algebra::Complex::new(0.0, 0.7)).unwrap();
    let path = dir.join("field.rsf");
    Snapshot::from_rs(&expand_rs(&e, &g, &k).unwrap()).write(std::fs::File::create(&path).unwrap()).unwrap();
    path
}

fn cli() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let run1 = rsphoton(&["verify", "all", "--seed", "42", "--out", a.to_str().unwrap()]);
    let run2 = rsphoton(&["verify", "all", "--seed", "42", "--out", b.to_str().unwrap()]);
    let j1 = std::fs::read(a.join("verify-all.json")).unwrap_or_default();
    let j2 = std::fs::read(b.join("verify-all.json")).unwrap_or_default();
    let identical = !j1.is_empty() && j1 == j2 && run1.stdout == run2.stdout;
    let all_pass = run1.status.code() == Some(0);

    let fixture = write_fixture(dir.path());
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(&cfg_path, format!(r#"{{"grid": {{"n": 16, "length": 1.0}}, "fixture": {:?}}}"#, fixture)).unwrap();
    let out = dir.path().join("m");
    let args = ["verify", "maxwell", "--config", cfg_path.to_str().unwrap(), "--out", out.to_str().unwrap()];
    let clean = rsphoton(&args).status.code();
    // perturb one payload value well past the header
    let mut bytes = std::fs::read(&fixture).unwrap();
    let at = bytes.len() / 2;
    bytes[at + 6] ^= 0x10;
    std::fs::write(&fixture, &bytes).unwrap();
    let corrupted = rsphoton(&args);
    let stderr = String::from_utf8_lossy(&corrupted.stderr);
    let named = stderr.contains("FAIL maxwell.fixture_vacuum_residual");
    let ok = identical && all_pass && clean == Some(0) && corrupted.status.code() == Some(1) && named;
    (
        ok,
        format!(
            "byte_identical={identical} verify_all_exit={:?} clean_fixture_exit={clean:?} corrupted_exit={:?} names_check={named}",
            run1.status.code(),
            corrupted.status.code()
        ),
    )
}

fn main() {
    let cfg = RunConfig::default();
    let mut lines = Vec::new();

    let (alg, t_alg) = timed(Suite::Algebra, &cfg);
    lines.push(from_checks(
        1,
        "algebra table, associativity, i^2 = -1, i e3 = e12",
        &pick(&alg, &["algebra.blade_table", "algebra.associativity", "algebra.i_squared", "algebra.i_e3"]),
        Some((t_alg < 1.0, format!("runtime={t_alg:.3}s<1s"))),
    ));
    lines.push(from_checks(2, "paravector product specialization", &pick(&alg, &["algebra.paravector_product"]), None));

    let (mx, t_mx) = timed(Suite::Maxwell, &cfg);
    lines.push(from_checks(
        3,
        "graded vs classical Maxwell residuals",
        &pick(&mx, &["maxwell.split_equivalence", "maxwell.vacuum_plane_waves"]),
        Some((t_mx < 30.0, format!("runtime={t_mx:.1}s<30s"))),
    ));
    lines.push(from_checks(
        4,
        "gauge invariance",
        &pick(&mx, &["maxwell.gauge_fields", "maxwell.gauge_residual", "maxwell.gauge_lambda_shift"]),
        None,
    ));
    lines.push(from_checks(
        5,
        "plane-wave identities",
        &pick(&mx, &["maxwell.plane_wave_b", "maxwell.plane_wave_f", "maxwell.plane_wave_curl", "maxwell.plane_wave_evolution"]),
        None,
    ));

    let (no, _) = timed(Suite::Noether, &cfg);
    lines.push(from_checks(6, "Lagrangian four-divergence", &pick(&no, &["noether.lagrangian_divergence"]), None));
    lines.push(from_checks(
        7,
        "currents and continuity",
        &pick(
            &no,
            &[
                "noether.j0_positive",
                "noether.single_mode_number",
                "noether.covariant_vs_standard",
                "noether.continuity_order",
                "noether.number_conservation",
            ],
        ),
        None,
    ));

    let (qu, _) = timed(Suite::Quantum, &cfg);
    lines.push(from_checks(
        8,
        "scalar products",
        &pick(&qu, &["quantum.orthonormality", "quantum.parseval", "quantum.positive_definite"]),
        None,
    ));
    lines.push(from_checks(
        9,
        "operator suite",
        &pick(
            &qu,
            &["quantum.spin_commutators", "quantum.eigenvalues", "quantum.harness_residual", "quantum.harness_order"],
        ),
        None,
    ));

    let (ok, d) = dynamics();
    lines.push(Line {
        id: 10,
        title: "dynamics and causality",
        pass: ok,
        detail: d,
    });
    let (ok, d) = cli();
    lines.push(Line {
        id: 11,
        title: "CLI determinism and negative control",
        pass: ok,
        detail: d,
    });

    for l in &lines {
        println!("{} criterion {:>2}: {} | {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.title, l.detail);
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    println!("acceptance: {} passed, {} failed", lines.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
