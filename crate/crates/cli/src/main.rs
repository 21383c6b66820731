use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rsphoton_cli::config::RunConfig;
use rsphoton_cli::simulate::{simulate_modes, simulate_pulse, SimulateError};
use rsphoton_cli::suites::Suite;

#[derive(Parser)]
#[command(name = "rsphoton", version, about = "Photon wave mechanics: verification suites and simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its JSON report.
    Verify {
        suite: Suite,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a mode list or a pulse and write snapshots and reports.
    Simulate {
        kind: Kind,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Modes,
    Pulse,
}

const USAGE: u8 = 2;

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn load(path: Option<&Path>) -> Result<RunConfig, ExitCode> {
    match path {
        Some(p) => RunConfig::load(p).map_err(usage),
        None => Ok(RunConfig::default()),
    }
}

fn configure_threads() -> Result<(), ExitCode> {
    let Ok(v) = std::env::var("RSPHOTON_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| usage(format!("RSPHOTON_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("cannot size thread pool: {e}")))
}

fn output_dir(out: Option<PathBuf>, cfg: &RunConfig) -> Result<PathBuf, ExitCode> {
    let dir = out.or_else(|| cfg.output_dir.clone()).unwrap_or_else(|| PathBuf::from("rsphoton-out"));
    std::fs::create_dir_all(&dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

fn verify(suite: Suite, config: Option<PathBuf>, seed: Option<u64>, out: Option<PathBuf>) -> Result<ExitCode, ExitCode> {
    let mut cfg = load(config.as_deref())?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let dir = output_dir(out, &cfg)?;
    let (report, times) = rsphoton_cli::verify(suite, &cfg).map_err(usage)?;
    for (s, t) in &times {
        eprintln!("{:<8} {:>8.2} s", s.name(), t.as_secs_f64());
    }
    for r in &report.suites {
        for c in r.failures() {
            eprintln!("FAIL {}: measured {:e}, tolerance {:e}", c.name, c.measured, c.tolerance);
        }
    }
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    let path = dir.join(format!("verify-{}.json", suite.name()));
    std::fs::write(&path, &json).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    print!("{json}");
    eprintln!("{} -> {}", if report.pass { "pass" } else { "FAIL" }, path.display());
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn simulate(kind: Kind, config: PathBuf, out: PathBuf) -> Result<ExitCode, ExitCode> {
    let cfg = load(Some(&config))?;
    cfg.validate(&rsphoton_cli::known_checks()).map_err(usage)?;
    let dir = output_dir(Some(out), &cfg)?;
    let start = std::time::Instant::now();
    let result = match kind {
        Kind::Modes => simulate_modes(&cfg, &dir).map(|s| {
            eprintln!("norm drift {:e}, max residual {:e}", s.norm_drift, s.max_residual);
            s.pass
        }),
        Kind::Pulse => simulate_pulse(&cfg, &dir).map(|s| {
            let c = &s.causality;
            eprintln!("r0 {}, max exterior fraction {:e}, max imaginary part {:e}", c.r0, c.max_exterior, c.max_imaginary);
            if let Some(f) = &s.finding {
                eprintln!("finding: {f}");
            }
            s.pass
        }),
    };
    eprintln!("wall time {:.2} s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => Ok(ExitCode::SUCCESS),
        Ok(false) => Ok(ExitCode::from(1)),
        Err(SimulateError::Scenario(msg)) => Err(usage(msg)),
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(code) = configure_threads() {
        return code;
    }
    let r = match cli.command {
        Command::Verify { suite, config, seed, out } => verify(suite, config, seed, out),
        Command::Simulate { kind, config, out } => simulate(kind, config, out),
    };
    r.unwrap_or_else(|code| code)
}
