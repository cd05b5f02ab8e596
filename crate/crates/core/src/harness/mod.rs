//! Command-line front end, Monte Carlo experiments and CSV sweeps.
//!
//! Exit codes: 0 on success, 1 for invalid input or configuration, 2 for
//! numerical failures such as exceptional points or lost unitarity.

pub mod config;
pub mod montecarlo;
pub mod sweep;

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{check_time_bound, effective_generator, RowStatus};
use crate::brachistochrone::{hermitian_min_time, pt_flip_time};
use crate::dilation::{
    dilate_evolution, format_complex, format_matrix, kraus_completeness_defect,
    subdynamics_restriction_scan, MatrixKind,
};
use crate::quantum::{evolve, pt_hamiltonian, pt_spectral, PTParams, StateVector};
use crate::{Error, Result};

pub use config::{RangeSpec, RunConfig};
pub use montecarlo::{measure_ancilla, run_montecarlo, MonteCarloResult};
pub use sweep::{csv_string, run_sweep, write_atomic, write_csv, CSV_HEADER};

#[derive(Parser, Debug)]
#[command(
    name = "ptsim",
    version,
    about = "PT-symmetric qubit dynamics, unitary dilation and time bounds",
    allow_negative_numbers = true
)]
struct Cli {
    /// `key = value` configuration file; flags override its entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write CSV, matrix dump or summary here
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Bound variant: eq4, full or both
    #[arg(long, global = true)]
    variant: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Params {
    /// Gain/loss magnitude (value or start:end:steps)
    #[arg(long)]
    r: Option<String>,
    /// Coupling (value or start:end:steps)
    #[arg(long)]
    s: Option<String>,
    /// Phase angle (value or start:end:steps)
    #[arg(long)]
    theta: Option<String>,
    /// Evolution time
    #[arg(long)]
    t: Option<f64>,
    /// Flip-time search window
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Haar samples for the restriction scan
    #[arg(long)]
    samples: Option<usize>,
    /// Initial basis state
    #[arg(long)]
    initial: Option<usize>,
    /// Target basis state
    #[arg(long)]
    target: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve a basis state and report the norm and normalized state
    Evolve(Params),
    /// Build the dilation and report α, β, γ and residuals
    Dilate(Params),
    /// Search the normalized flip time
    FlipTime(Params),
    /// Check the time bound of the dilated unitary
    BoundCheck(Params),
    /// Sweep a (θ, r, s) grid and emit CSV
    Sweep(Params),
    /// Sample ancilla measurements
    Montecarlo(Params),
}

/// Runs the CLI with process I/O and returns the exit code.
pub fn cli_main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI against arbitrary writers.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", line.trim());
            return 1;
        }
    };
    match execute(cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}

fn build_config(cli: &Cli, p: &Params) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    let pairs: [(&str, Option<String>); 13] = [
        ("r", p.r.clone()),
        ("s", p.s.clone()),
        ("theta", p.theta.clone()),
        ("t", p.t.map(|v| v.to_string())),
        ("t_max", p.t_max.map(|v| v.to_string())),
        ("trials", p.trials.map(|v| v.to_string())),
        ("samples", p.samples.map(|v| v.to_string())),
        ("initial", p.initial.map(|v| v.to_string())),
        ("target", p.target.map(|v| v.to_string())),
        ("seed", cli.seed.map(|v| v.to_string())),
        ("hbar", cli.hbar.map(|v| v.to_string())),
        ("variant", cli.variant.clone()),
        (
            "output",
            cli.output.as_ref().map(|v| v.display().to_string()),
        ),
    ];
    for (key, value) in pairs {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    if let Some(path) = &cli.output {
        cfg.output = Some(path.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<String> {
    let (kind, params) = match &cli.command {
        Command::Evolve(p) => ("evolve", p),
        Command::Dilate(p) => ("dilate", p),
        Command::FlipTime(p) => ("flip-time", p),
        Command::BoundCheck(p) => ("bound-check", p),
        Command::Sweep(p) => ("sweep", p),
        Command::Montecarlo(p) => ("montecarlo", p),
    };
    let cfg = build_config(&cli, params)?;
    match kind {
        "evolve" => finish(&cfg, cmd_evolve(&cfg)?),
        "dilate" => cmd_dilate(&cfg),
        "flip-time" => finish(&cfg, cmd_flip_time(&cfg)?),
        "bound-check" => finish(&cfg, cmd_bound_check(&cfg)?),
        "sweep" => cmd_sweep(&cfg),
        _ => finish(&cfg, cmd_montecarlo(&cfg)?),
    }
}

/// Mirrors the summary into the output file when one is requested.
fn finish(cfg: &RunConfig, summary: String) -> Result<String> {
    if let Some(path) = &cfg.output {
        write_atomic(path, summary.as_bytes())?;
    }
    Ok(summary)
}

fn header(p: &PTParams) -> String {
    format!("r={} s={} theta={} hbar={}\n", p.r, p.s, p.theta, p.hbar)
}

fn default_t_max(p: &PTParams) -> Result<f64> {
    let sd = pt_spectral(p)?;
    if !(sd.omega > 0.0) {
        return Err(Error::NonPositiveOmega(sd.omega));
    }
    Ok(2.0 * PI * p.hbar / sd.omega)
}

fn flip_for(cfg: &RunConfig, p: &PTParams) -> Result<f64> {
    let t_max = match cfg.t_max {
        Some(t) => t,
        None => default_t_max(p)?,
    };
    pt_flip_time(
        p,
        &StateVector::basis(2, cfg.initial),
        &StateVector::basis(2, cfg.target),
        t_max,
    )
}

fn cmd_evolve(cfg: &RunConfig) -> Result<String> {
    let p = cfg.point()?;
    let t = cfg.t.unwrap_or(config::T_DEFAULT);
    let h = pt_hamiltonian(&p);
    let sd = pt_spectral(&p)?;
    let raw = evolve(&h, t, &StateVector::basis(2, cfg.initial), p.hbar)?;
    let gamma = raw.norm();
    let state = raw.normalize()?;
    let mut s = header(&p);
    let _ = writeln!(s, "t={t}");
    let _ = writeln!(s, "unbroken={} omega={}", sd.unbroken, sd.omega);
    let _ = writeln!(s, "gamma={gamma}");
    for (k, z) in state.amplitudes().iter().enumerate() {
        let _ = writeln!(s, "state[{k}]={}", format_complex(*z));
    }
    Ok(s)
}

fn cmd_dilate(cfg: &RunConfig) -> Result<String> {
    let p = cfg.point()?;
    let t = cfg.t.unwrap_or(config::T_DEFAULT);
    pt_spectral(&p)?;
    let h = pt_hamiltonian(&p);
    let d = dilate_evolution(&h, t, p.hbar)?;
    let scan = subdynamics_restriction_scan(&h, t, p.hbar, cfg.samples, cfg.seed)?;
    let mut s = header(&p);
    let _ = writeln!(s, "t={t}");
    let _ = writeln!(s, "alpha={} beta={} gamma={}", d.alpha, d.beta, d.gamma);
    let _ = writeln!(s, "alpha2={}", d.alpha * d.alpha);
    let _ = writeln!(s, "unitarity_residual={:e}", d.u.unitarity_defect());
    let _ = writeln!(s, "decomposition_residual={:e}", d.decomposition_residual);
    let _ = writeln!(
        s,
        "kraus_completeness_residual={:e}",
        kraus_completeness_defect(&[d.kraus.0.clone(), d.kraus.1.clone()])
    );
    let _ = writeln!(
        s,
        "restriction_fraction={} min_fidelity={} samples={} seed={}",
        scan.fraction, scan.min_fidelity, scan.samples, cfg.seed
    );
    if let Some(path) = &cfg.output {
        let mut dump = String::new();
        for (kind, m) in [
            (MatrixKind::U, &d.u),
            (MatrixKind::K, &d.k),
            (MatrixKind::M0, &d.kraus.0),
            (MatrixKind::M1, &d.kraus.1),
        ] {
            dump.push_str(&format_matrix(kind, m));
        }
        write_atomic(path, dump.as_bytes())?;
        let _ = writeln!(s, "wrote {}", path.display());
    }
    Ok(s)
}

fn cmd_flip_time(cfg: &RunConfig) -> Result<String> {
    let p = cfg.point()?;
    let sd = pt_spectral(&p)?;
    let t = flip_for(cfg, &p)?;
    let tau = hermitian_min_time(
        &StateVector::basis(2, cfg.initial),
        &StateVector::basis(2, cfg.target),
        sd.omega,
        p.hbar,
    )?;
    let mut s = header(&p);
    let _ = writeln!(s, "t_flip={t}");
    let _ = writeln!(s, "omega_H={} unbroken={}", sd.omega, sd.unbroken);
    let _ = writeln!(s, "tau_hermitian={}", tau.tau);
    let _ = writeln!(s, "faster_than_hermitian={}", t < tau.tau - 1e-9);
    Ok(s)
}

fn cmd_bound_check(cfg: &RunConfig) -> Result<String> {
    let p = cfg.point()?;
    let t = match cfg.t {
        Some(t) => t,
        None => flip_for(cfg, &p)?,
    };
    let d = dilate_evolution(&pt_hamiltonian(&p), t, p.hbar)?;
    let eff = effective_generator(&d.u, t, p.hbar)?;
    let mut s = header(&p);
    let _ = writeln!(
        s,
        "T={t} alpha2={} omega_U={}",
        d.alpha * d.alpha,
        eff.omega
    );
    if eff.branch_warning {
        let _ = writeln!(
            s,
            "warning: eigenphase near the branch cut; omega_U is a lower estimate"
        );
    }
    for &v in cfg.variant.variants() {
        let b = check_time_bound(&d, t, v)?;
        let _ = writeln!(
            s,
            "variant={} overlap={} rhs={} margin={} satisfied={}",
            v, b.overlap_arg, b.rhs, b.margin, b.satisfied
        );
    }
    Ok(s)
}

fn cmd_sweep(cfg: &RunConfig) -> Result<String> {
    let records = run_sweep(cfg)?;
    let csv = csv_string(&records)?;
    let Some(path) = &cfg.output else {
        return Ok(csv);
    };
    write_atomic(path, csv.as_bytes())?;
    let count = |st: RowStatus| records.iter().filter(|r| r.status == st).count();
    let bound_ok = records.iter().filter(|r| r.bound_ok).count();
    Ok(format!(
        "rows={} ok={} flagged={} skip={} bound_ok={}\nwrote {}\n",
        records.len(),
        count(RowStatus::Ok),
        count(RowStatus::Flagged),
        count(RowStatus::Skip),
        bound_ok,
        path.display()
    ))
}

fn cmd_montecarlo(cfg: &RunConfig) -> Result<String> {
    let (d, res) = run_montecarlo(cfg)?;
    let p = cfg.point()?;
    let mut s = header(&p);
    let _ = writeln!(s, "t={} seed={} initial={}", d.t, cfg.seed, cfg.initial);
    let _ = writeln!(s, "trials={} successes={}", res.trials, res.successes);
    let _ = writeln!(s, "empirical_freq={}", res.empirical_freq);
    let _ = writeln!(s, "p_theory={}", res.p_theory);
    let _ = writeln!(s, "z_score={}", res.z_score);
    Ok(s)
}
