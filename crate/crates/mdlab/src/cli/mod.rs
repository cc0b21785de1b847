//! Command-line front end.
//!
//! Subcommands cover coefficient tables, walk simulation, tail-ratio sweeps,
//! Berry–Esseen distances, CI coverage and the normal-tail self-check. Every
//! value flag can instead come from a `--config` file of `key = value` lines
//! (flag > file > default); `MDLAB_WORKERS` supplies the default worker
//! count. Exit codes: 0 ok, 1 usage/validation, 2 numeric failure, 3 I/O.

mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::ar1::{Ar1Noise, Ar1Params, CiRegime};
use crate::erw::{self, ErwParams, StatisticMode, StepDistribution};
use crate::error::{Error, Result};
use crate::mc::{
    berry_esseen_distance, coverage_experiment, replicate_rng, tail_ratio_sweep,
    write_tail_ratio_csv, Ar1StatMode, McConfig, ModelSpec,
};
use crate::normal::{mills_bounds, std_normal_quantile, std_normal_tail, Probability};
use crate::report::{g17, manifest_json, write_output};
use config::Resolver;

#[derive(Parser)]
#[command(
    name = "mdlab",
    version,
    about = "Monte Carlo laboratory for moderate deviations of martingale statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient table gamma_k, a_k, v_k as CSV
    Coeffs(CoeffsArgs),
    /// Elephant-random-walk experiments
    #[command(subcommand)]
    Erw(ErwCommand),
    /// AR(1) least-squares experiments
    #[command(subcommand)]
    Ar1(Ar1Command),
    /// Normal-tail self-checks
    #[command(subcommand)]
    Normal(NormalCommand),
}

#[derive(Subcommand)]
enum ErwCommand {
    /// Tail probabilities of the normalized walk statistic against 1-Φ(x)
    TailRatio(ErwTailRatioArgs),
    /// Kolmogorov–Smirnov distance of the statistic from the standard normal
    Ks(ErwKsArgs),
    /// Per-path summaries (walk, martingale, normalizers, statistics)
    Simulate(ErwSimulateArgs),
}

#[derive(Subcommand)]
enum Ar1Command {
    /// Tail probabilities of an AR(1) error statistic against 1-Φ(x)
    TailRatio(Ar1TailRatioArgs),
    /// Empirical confidence-interval coverage
    Coverage(Ar1CoverageArgs),
}

#[derive(Subcommand)]
enum NormalCommand {
    /// Mills sandwich, monotonicity, symmetry and quantile round-trip checks
    Check(NormalCheckArgs),
}

#[derive(Args)]
struct CoeffsArgs {
    /// Memory parameter in (0,1]
    #[arg(long)]
    p: Option<f64>,
    /// Horizon (number of rows)
    #[arg(long)]
    n: Option<usize>,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Config file of key = value lines
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ErwTailRatioArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    reps: Option<u64>,
    /// Evaluation grid lo:hi:step
    #[arg(long)]
    grid: Option<String>,
    /// Step-size law: constant | two-point:z1,z2,w | uniform
    #[arg(long)]
    steps: Option<String>,
    /// First-step up-probability (default 1/2)
    #[arg(long)]
    q: Option<f64>,
    /// Normalizer: det | self
    #[arg(long)]
    normalizer: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Manifest path (default <out>.manifest.json when --out is given)
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Treat underflowing grid points as fatal instead of dropping them
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ErwKsArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    reps: Option<u64>,
    /// Step-size law: constant | two-point:z1,z2,w | uniform
    #[arg(long)]
    steps: Option<String>,
    #[arg(long)]
    q: Option<f64>,
    /// Normalizer: det | self
    #[arg(long)]
    normalizer: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ErwSimulateArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    /// Step-size law: constant | two-point:z1,z2,w | uniform
    #[arg(long)]
    steps: Option<String>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of paths (default 1)
    #[arg(long)]
    reps: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct Ar1TailRatioArgs {
    /// Autoregression coefficient, |theta| < 1
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Noise law: two-point:a | uniform:H
    #[arg(long)]
    noise: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    reps: Option<u64>,
    /// Evaluation grid lo:hi:step
    #[arg(long)]
    grid: Option<String>,
    /// Statistic: studentized | standardized
    #[arg(long)]
    stat: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Treat underflowing grid points as fatal instead of dropping them
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct Ar1CoverageArgs {
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Noise law: two-point:a | uniform:H
    #[arg(long)]
    noise: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Nominal risk in (0,1)
    #[arg(long)]
    kappa: Option<f64>,
    /// Interval regime: quantile | exponential
    #[arg(long)]
    regime: Option<String>,
    #[arg(long)]
    reps: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct NormalCheckArgs {
    /// Check grid lo:hi:step (default 0:10:0.01)
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Parses argv and runs the selected subcommand, returning the process exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Erw(ErwCommand::TailRatio(args)) => cmd_erw_tail_ratio(args),
        Command::Erw(ErwCommand::Ks(args)) => cmd_erw_ks(args),
        Command::Erw(ErwCommand::Simulate(args)) => cmd_erw_simulate(args),
        Command::Ar1(Ar1Command::TailRatio(args)) => cmd_ar1_tail_ratio(args),
        Command::Ar1(Ar1Command::Coverage(args)) => cmd_ar1_coverage(args),
        Command::Normal(NormalCommand::Check(args)) => cmd_normal_check(args),
    }
}

// ---- shared plumbing -------------------------------------------------------

/// Expands `lo:hi:step` into an ascending grid; `hi` is included when `step`
/// divides the range within 1e-9 (and then emitted as exactly `hi`).
fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        return Err(Error::Config(format!("grid must be lo:hi:step, got `{spec}`")));
    };
    let lo: f64 = parse_num(lo, "grid lo")?;
    let hi: f64 = parse_num(hi, "grid hi")?;
    let step: f64 = parse_num(step, "grid step")?;
    if !(step > 0.0) {
        return Err(Error::Config(format!("grid step must be > 0, got {step}")));
    }
    if hi < lo {
        return Err(Error::Config(format!("grid needs hi >= lo, got {lo}:{hi}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor();
    if count > 1e7 {
        return Err(Error::Config(format!("grid `{spec}` has more than 10^7 points")));
    }
    let count = count as usize;
    let mut grid: Vec<f64> = (0..=count).map(|k| lo + k as f64 * step).collect();
    let last = grid.last_mut().expect("count >= 0");
    if (*last - hi).abs() <= 1e-9 {
        *last = hi;
    }
    Ok(grid)
}

fn parse_num(raw: &str, what: &str) -> Result<f64> {
    let v: f64 = raw
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{what}: cannot parse `{raw}` as a number")))?;
    if !v.is_finite() {
        return Err(Error::Config(format!("{what}: `{raw}` is not finite")));
    }
    Ok(v)
}

fn parse_steps(spec: &str) -> Result<StepDistribution> {
    match spec {
        "constant" => return Ok(StepDistribution::ConstantOne),
        "uniform" => return Ok(StepDistribution::UniformOnZeroTwo),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("two-point:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let [z1, z2, w] = parts[..] else {
            return Err(Error::Config(format!(
                "two-point steps need z1,z2,w, got `{rest}`"
            )));
        };
        return StepDistribution::two_point(
            parse_num(z1, "steps z1")?,
            parse_num(z2, "steps z2")?,
            parse_num(w, "steps w")?,
        );
    }
    Err(Error::Config(format!(
        "unknown step law `{spec}` (constant | two-point:z1,z2,w | uniform)"
    )))
}

fn parse_noise(spec: &str) -> Result<Ar1Noise> {
    if let Some(rest) = spec.strip_prefix("two-point:") {
        return Ar1Noise::two_point_sym(parse_num(rest, "noise scale")?);
    }
    if let Some(rest) = spec.strip_prefix("uniform:") {
        return Ar1Noise::uniform(parse_num(rest, "noise bound")?);
    }
    Err(Error::Config(format!(
        "unknown noise law `{spec}` (two-point:a | uniform:H)"
    )))
}

fn parse_normalizer(spec: &str) -> Result<StatisticMode> {
    match spec {
        "det" => Ok(StatisticMode::Deterministic),
        "self" => Ok(StatisticMode::SelfNormalized),
        _ => Err(Error::Config(format!("normalizer must be det or self, got `{spec}`"))),
    }
}

fn parse_stat(spec: &str) -> Result<Ar1StatMode> {
    match spec {
        "studentized" => Ok(Ar1StatMode::Studentized),
        "standardized" => Ok(Ar1StatMode::Standardized),
        _ => Err(Error::Config(format!(
            "stat must be studentized or standardized, got `{spec}`"
        ))),
    }
}

fn parse_regime(spec: &str) -> Result<CiRegime> {
    match spec {
        "quantile" => Ok(CiRegime::Quantile),
        "exponential" => Ok(CiRegime::Exponential),
        _ => Err(Error::Config(format!(
            "regime must be quantile or exponential, got `{spec}`"
        ))),
    }
}

/// Flag > file > MDLAB_WORKERS > available parallelism.
fn resolve_workers(resolver: &Resolver, flag: Option<usize>) -> Result<usize> {
    let chosen = match resolver.opt("workers", flag)? {
        Some(w) => Some(w),
        None => match std::env::var("MDLAB_WORKERS") {
            Ok(raw) => Some(raw.parse().map_err(|_| {
                Error::Config(format!("MDLAB_WORKERS must be a positive integer, got `{raw}`"))
            })?),
            Err(_) => None,
        },
    };
    match chosen {
        Some(0) => Err(Error::Config("workers must be >= 1".into())),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

/// Drops grid points whose normal tail is below 1e-15 with a warning, or
/// fails on them under `--strict`.
fn filter_grid(grid: Vec<f64>, strict: bool) -> Result<Vec<f64>> {
    let mut kept = Vec::with_capacity(grid.len());
    let mut dropped = Vec::new();
    for x in grid {
        if x.is_finite() && x >= 0.0 && std_normal_tail(x)?.value() < 1e-15 {
            dropped.push(x);
        } else {
            kept.push(x);
        }
    }
    if !dropped.is_empty() {
        let list: Vec<String> = dropped.iter().map(|x| x.to_string()).collect();
        let list = list.join(", ");
        if strict {
            return Err(Error::Numeric(format!(
                "grid points where 1-Φ(x) underflows the 1e-15 floor: {list}"
            )));
        }
        eprintln!("warning: dropping grid points where 1-Φ(x) underflows the 1e-15 floor: {list}");
    }
    if kept.is_empty() {
        return Err(Error::Config(
            "grid is empty after dropping underflowing points".into(),
        ));
    }
    Ok(kept)
}

fn manifest_target(explicit: Option<PathBuf>, out: Option<&Path>) -> Option<PathBuf> {
    explicit.or_else(|| {
        out.map(|p| {
            let mut os = p.as_os_str().to_os_string();
            os.push(".manifest.json");
            PathBuf::from(os)
        })
    })
}

fn write_manifest(
    path: Option<&Path>,
    command: &str,
    config: &[(String, String)],
    started: Instant,
) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, manifest_json(command, config, started.elapsed().as_secs_f64()))?;
    }
    Ok(())
}

fn with_writer<F>(path: Option<&Path>, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let mut w = std::io::BufWriter::new(fs::File::create(p)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = std::io::stdout().lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn pairs(items: &[(&str, String)]) -> Vec<(String, String)> {
    items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

// ---- subcommands -----------------------------------------------------------

const COEFFS_KEYS: &[&str] = &["p", "n", "out"];

fn cmd_coeffs(args: CoeffsArgs) -> Result<()> {
    let r = Resolver::new(args.config.as_deref(), COEFFS_KEYS)?;
    let p = r.require("p", args.p)?;
    let n = r.require("n", args.n)?;
    let out: Option<PathBuf> = r.opt("out", args.out)?;
    let table = erw::coefficients(p, n)?;
    with_writer(out.as_deref(), |w| table.write_csv(w))
}

const ERW_TAIL_KEYS: &[&str] = &[
    "p", "n", "reps", "grid", "steps", "q", "normalizer", "seed", "workers", "out", "manifest",
    "strict",
];

fn cmd_erw_tail_ratio(args: ErwTailRatioArgs) -> Result<()> {
    let started = Instant::now();
    let r = Resolver::new(args.config.as_deref(), ERW_TAIL_KEYS)?;
    let p = r.require("p", args.p)?;
    let n = r.require("n", args.n)?;
    let reps = r.require("reps", args.reps)?;
    let grid_spec: String = r.require("grid", args.grid)?;
    let steps_spec: String = r.require("steps", args.steps)?;
    let normalizer_spec: String = r.require("normalizer", args.normalizer)?;
    let seed = r.require("seed", args.seed)?;
    let q = r.or_default("q", args.q, 0.5)?;
    let workers = resolve_workers(&r, args.workers)?;
    let strict = r.flag("strict", args.strict)?;
    let out: Option<PathBuf> = r.opt("out", args.out)?;
    let manifest = manifest_target(r.opt("manifest", args.manifest)?, out.as_deref());

    let params = ErwParams::new(p, q, n, parse_steps(&steps_spec)?)?;
    let mode = parse_normalizer(&normalizer_spec)?;
    let grid = filter_grid(parse_grid(&grid_spec)?, strict)?;
    let config = McConfig {
        reps,
        master_seed: seed,
        workers,
        model: ModelSpec::Erw { params, mode },
        grid,
    };
    let estimates = tail_ratio_sweep(&config)?;
    with_writer(out.as_deref(), |w| write_tail_ratio_csv(&estimates, w))?;
    write_manifest(
        manifest.as_deref(),
        "erw tail-ratio",
        &pairs(&[
            ("p", p.to_string()),
            ("q", q.to_string()),
            ("n", n.to_string()),
            ("steps", steps_spec),
            ("normalizer", normalizer_spec),
            ("grid", grid_spec),
            ("reps", reps.to_string()),
            ("seed", seed.to_string()),
            ("workers", workers.to_string()),
            ("strict", strict.to_string()),
        ]),
        started,
    )
}

const ERW_KS_KEYS: &[&str] =
    &["p", "n", "reps", "steps", "q", "normalizer", "seed", "workers", "out", "manifest"];

fn cmd_erw_ks(args: ErwKsArgs) -> Result<()> {
    let started = Instant::now();
    let r = Resolver::new(args.config.as_deref(), ERW_KS_KEYS)?;
    let p = r.require("p", args.p)?;
    let n = r.require("n", args.n)?;
    let reps = r.require("reps", args.reps)?;
    let steps_spec: String = r.require("steps", args.steps)?;
    let normalizer_spec: String = r.require("normalizer", args.normalizer)?;
    let seed = r.require("seed", args.seed)?;
    let q = r.or_default("q", args.q, 0.5)?;
    let workers = resolve_workers(&r, args.workers)?;
    let out: Option<PathBuf> = r.opt("out", args.out)?;
    let manifest = manifest_target(r.opt("manifest", args.manifest)?, out.as_deref());

    let params = ErwParams::new(p, q, n, parse_steps(&steps_spec)?)?;
    let mode = parse_normalizer(&normalizer_spec)?;
    let config = McConfig {
        reps,
        master_seed: seed,
        workers,
        model: ModelSpec::Erw { params, mode },
        grid: Vec::new(),
    };
    let ks = berry_esseen_distance(&config)?;
    write_output(out.as_deref(), &ks.to_json())?;
    write_manifest(
        manifest.as_deref(),
        "erw ks",
        &pairs(&[
            ("p", p.to_string()),
            ("q", q.to_string()),
            ("n", n.to_string()),
            ("steps", steps_spec),
            ("normalizer", normalizer_spec),
            ("reps", reps.to_string()),
            ("seed", seed.to_string()),
            ("workers", workers.to_string()),
        ]),
        started,
    )
}

const ERW_SIMULATE_KEYS: &[&str] = &["p", "n", "steps", "q", "seed", "reps", "out", "manifest"];

fn cmd_erw_simulate(args: ErwSimulateArgs) -> Result<()> {
    let started = Instant::now();
    let r = Resolver::new(args.config.as_deref(), ERW_SIMULATE_KEYS)?;
    let p = r.require("p", args.p)?;
    let n = r.require("n", args.n)?;
    let steps_spec: String = r.require("steps", args.steps)?;
    let seed = r.require("seed", args.seed)?;
    let q = r.or_default("q", args.q, 0.5)?;
    let reps = r.or_default("reps", args.reps, 1u64)?;
    let out: Option<PathBuf> = r.opt("out", args.out)?;
    let manifest = manifest_target(r.opt("manifest", args.manifest)?, out.as_deref());

    let params = ErwParams::new(p, q, n, parse_steps(&steps_spec)?)?;
    let table = erw::coefficients(p, n)?;
    with_writer(out.as_deref(), |w| {
        writeln!(
            w,
            "rep,t_n,s_n,m_n,qv,det_normalizer,self_normalizer,stat_det,stat_self"
        )?;
        for rep in 0..reps {
            let mut rng = replicate_rng(seed, rep);
            let path = erw::simulate_path_fast(params, &mut rng);
            let stats = erw::martingale_stats(&path, &table)?;
            let stat_det = erw::normalized_statistic(&stats, StatisticMode::Deterministic)?;
            let stat_self = erw::normalized_statistic(&stats, StatisticMode::SelfNormalized)?;
            writeln!(
                w,
                "{rep},{},{},{},{},{},{},{},{}",
                path.t_n(),
                g17(path.s_n()),
                g17(stats.m_n),
                g17(stats.qv),
                g17(stats.det_normalizer),
                g17(stats.self_normalizer),
                g17(stat_det),
                g17(stat_self),
            )?;
        }
        Ok(())
    })?;
    write_manifest(
        manifest.as_deref(),
        "erw simulate",
        &pairs(&[
            ("p", p.to_string()),
            ("q", q.to_string()),
            ("n", n.to_string()),
            ("steps", steps_spec),
            ("reps", reps.to_string()),
            ("seed", seed.to_string()),
        ]),
        started,
    )
}

const AR1_TAIL_KEYS: &[&str] = &[
    "theta", "noise", "n", "reps", "grid", "stat", "seed", "workers", "out", "manifest", "strict",
];

fn cmd_ar1_tail_ratio(args: Ar1TailRatioArgs) -> Result<()> {
    let started = Instant::now();
    let r = Resolver::new(args.config.as_deref(), AR1_TAIL_KEYS)?;
    let theta = r.require("theta", args.theta)?;
    let noise_spec: String = r.require("noise", args.noise)?;
    let n = r.require("n", args.n)?;
    let reps = r.require("reps", args.reps)?;
    let grid_spec: String = r.require("grid", args.grid)?;
    let stat_spec: String = r.require("stat", args.stat)?;
    let seed = r.require("seed", args.seed)?;
    let workers = resolve_workers(&r, args.workers)?;
    let strict = r.flag("strict", args.strict)?;
    let out: Option<PathBuf> = r.opt("out", args.out)?;
    let manifest = manifest_target(r.opt("manifest", args.manifest)?, out.as_deref());

    let params = Ar1Params::new(theta, parse_noise(&noise_spec)?, n)?;
    let mode = parse_stat(&stat_spec)?;
    let grid = filter_grid(parse_grid(&grid_spec)?, strict)?;
    let config = McConfig {
        reps,
        master_seed: seed,
        workers,
        model: ModelSpec::Ar1 { params, mode },
        grid,
    };
    let estimates = tail_ratio_sweep(&config)?;
    with_writer(out.as_deref(), |w| write_tail_ratio_csv(&estimates, w))?;
    write_manifest(
        manifest.as_deref(),
        "ar1 tail-ratio",
        &pairs(&[
            ("theta", theta.to_string()),
            ("noise", noise_spec),
            ("n", n.to_string()),
            ("stat", stat_spec),
            ("grid", grid_spec),
            ("reps", reps.to_string()),
            ("seed", seed.to_string()),
            ("workers", workers.to_string()),
            ("strict", strict.to_string()),
        ]),
        started,
    )
}

const AR1_COVERAGE_KEYS: &[&str] =
    &["theta", "noise", "n", "kappa", "regime", "reps", "seed", "workers", "out", "manifest"];

fn cmd_ar1_coverage(args: Ar1CoverageArgs) -> Result<()> {
    let started = Instant::now();
    let r = Resolver::new(args.config.as_deref(), AR1_COVERAGE_KEYS)?;
    let theta = r.require("theta", args.theta)?;
    let noise_spec: String = r.require("noise", args.noise)?;
    let n = r.require("n", args.n)?;
    let kappa = r.require("kappa", args.kappa)?;
    let regime_spec: String = r.require("regime", args.regime)?;
    let reps = r.require("reps", args.reps)?;
    let seed = r.require("seed", args.seed)?;
    let workers = resolve_workers(&r, args.workers)?;
    let out: Option<PathBuf> = r.opt("out", args.out)?;
    let manifest = manifest_target(r.opt("manifest", args.manifest)?, out.as_deref());

    let params = Ar1Params::new(theta, parse_noise(&noise_spec)?, n)?;
    let regime = parse_regime(&regime_spec)?;
    let config = McConfig {
        reps,
        master_seed: seed,
        workers,
        model: ModelSpec::Ar1 { params, mode: Ar1StatMode::Studentized },
        grid: Vec::new(),
    };
    let (estimate, degenerate) = coverage_experiment(&config, kappa, regime)?;
    if degenerate > 0 {
        eprintln!("note: {degenerate} replicates had a degenerate regression sum and were excluded");
    }
    write_output(out.as_deref(), &estimate.to_json())?;
    write_manifest(
        manifest.as_deref(),
        "ar1 coverage",
        &pairs(&[
            ("theta", theta.to_string()),
            ("noise", noise_spec),
            ("n", n.to_string()),
            ("kappa", kappa.to_string()),
            ("regime", regime_spec),
            ("reps", reps.to_string()),
            ("seed", seed.to_string()),
            ("workers", workers.to_string()),
        ]),
        started,
    )
}

const NORMAL_CHECK_KEYS: &[&str] = &["grid"];

fn cmd_normal_check(args: NormalCheckArgs) -> Result<()> {
    let r = Resolver::new(args.config.as_deref(), NORMAL_CHECK_KEYS)?;
    let grid_spec = r.or_default("grid", args.grid, "0:10:0.01".to_string())?;
    let grid = parse_grid(&grid_spec)?;
    let report = run_normal_check(&grid)?;
    write_output(None, &report)
}

/// Mills sandwich, strict monotonicity, symmetry and quantile round-trip on
/// the grid; any violation is a numeric failure.
fn run_normal_check(grid: &[f64]) -> Result<String> {
    let mut prev = f64::INFINITY;
    let mut sandwich_points = 0usize;
    let mut round_trip_points = 0usize;
    let mut round_trip_max: f64 = 0.0;
    let mut symmetry_max: f64 = 0.0;
    for &x in grid {
        if !(x >= 0.0) {
            return Err(Error::Config(format!(
                "normal check grid must be nonnegative, got {x}"
            )));
        }
        let t = std_normal_tail(x)?.value();
        if t > 0.0 {
            let m = mills_bounds(x)?;
            if !(m.lower <= t && t <= m.upper) {
                return Err(Error::Numeric(format!(
                    "Mills sandwich violated at x = {x}: need {} <= {} <= {}",
                    g17(m.lower),
                    g17(t),
                    g17(m.upper)
                )));
            }
            sandwich_points += 1;
        }
        // strict decrease, relaxed to non-increase once the tail is subnormal
        let decreasing = if prev > 1e-300 { t < prev } else { t <= prev };
        if !decreasing {
            return Err(Error::Numeric(format!(
                "tail is not decreasing at x = {x}: {} !< {}",
                g17(t),
                g17(prev)
            )));
        }
        prev = t;
        if t >= 1e-12 {
            let q = std_normal_quantile(Probability::new(t)?)?;
            let back = std_normal_tail(-q)?.value();
            let rel = ((back - t) / t).abs();
            if rel > 1e-9 {
                return Err(Error::Numeric(format!(
                    "quantile round-trip off at x = {x}: relative error {rel:e}"
                )));
            }
            round_trip_points += 1;
            round_trip_max = round_trip_max.max(rel);
        }
        if x <= 8.0 {
            let s = t + std_normal_tail(-x)?.value();
            let err = (s - 1.0).abs();
            if err > 1e-12 {
                return Err(Error::Numeric(format!(
                    "symmetry violated at x = {x}: |tail(x)+tail(-x)-1| = {err:e}"
                )));
            }
            symmetry_max = symmetry_max.max(err);
        }
    }
    Ok(format!(
        "normal check: {} grid points on [{}, {}]\n\
         mills sandwich: ok ({sandwich_points} points)\n\
         monotonicity: ok\n\
         quantile round-trip (tail >= 1e-12): ok ({round_trip_points} points, max rel err {round_trip_max:.2e})\n\
         symmetry (x <= 8): ok (max abs err {symmetry_max:.2e})\n",
        grid.len(),
        grid[0],
        grid[grid.len() - 1],
    ))
}
