//! The three experiment kinds: tail-ratio sweeps, Berry–Esseen distances,
//! and confidence-interval coverage.

use rayon::prelude::*;

use super::stats::{dkw_bound, ks_one_sample, wilson_95};
use super::stream::replicate_rng;
use crate::ar1::{self, Ar1Params, CiRegime};
use crate::erw::{self, ErwParams, StatisticMode};
use crate::error::{Error, Result};
use crate::normal::std_normal_tail;
use crate::report::g17;

/// Which AR(1) statistic a sweep estimates tails of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ar1StatMode {
    Studentized,
    Standardized,
}

/// Model driven by the engine, with its statistic mode.
#[derive(Debug, Clone, Copy)]
pub enum ModelSpec {
    Erw { params: ErwParams, mode: StatisticMode },
    Ar1 { params: Ar1Params, mode: Ar1StatMode },
}

/// Full experiment configuration. Identical configs produce bit-identical
/// results whatever `workers` is.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub reps: u64,
    pub master_seed: u64,
    pub workers: usize,
    pub model: ModelSpec,
    /// Evaluation points, sorted ascending, each with 1-Φ(x) >= 1e-15.
    pub grid: Vec<f64>,
}

const TAIL_FLOOR: f64 = 1e-15;

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Config("reps must be >= 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        let mut prev = f64::NEG_INFINITY;
        for &x in &self.grid {
            if !(x >= 0.0) || !x.is_finite() {
                return Err(Error::Config(format!("grid points must be finite and >= 0, got {x}")));
            }
            if x < prev {
                return Err(Error::Config("grid must be sorted ascending".into()));
            }
            prev = x;
            if std_normal_tail(x)?.value() < TAIL_FLOOR {
                return Err(Error::Config(format!(
                    "grid point {x} has 1-Φ(x) < 1e-15; tail ratios there are numerically \
                     meaningless at any realistic replication count"
                )));
            }
        }
        if let ModelSpec::Erw { params, .. } = &self.model {
            if params.p == 0.75 {
                if let Some(&x) = self.grid.iter().find(|&&x| x > 3.0) {
                    return Err(Error::Config(format!(
                        "grid point {x} > 3 at the critical memory p = 3/4: outside the x-range \
                         the expansion is valid for at this horizon"
                    )));
                }
            }
        }
        Ok(())
    }
}

// Runs `f` once per replicate on a dedicated pool, in index order.
fn par_map_replicates<T, F>(config: &McConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    pool.install(|| (0..config.reps).into_par_iter().map(|i| f(i)).collect())
}

fn attach_index<T>(i: u64, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Numeric(format!("replicate {i}: {e}")))
}

/// One statistic value per replicate, in replicate order. Replicate `i`
/// draws only from `replicate_rng(master_seed, i)`, so the output is
/// independent of worker count and scheduling.
pub fn run_replicates(config: &McConfig) -> Result<Vec<f64>> {
    config.validate()?;
    match &config.model {
        ModelSpec::Erw { params, mode } => {
            let table = erw::coefficients(params.p, params.n)?;
            let (params, mode) = (*params, *mode);
            par_map_replicates(config, move |i| {
                let mut rng = replicate_rng(config.master_seed, i);
                let path = erw::simulate_path_fast(params, &mut rng);
                attach_index(i, erw::statistic_for(&path, &table, mode))
            })
        }
        ModelSpec::Ar1 { params, mode } => {
            let sigma = params.noise.variance().sqrt();
            let (params, mode) = (*params, *mode);
            par_map_replicates(config, move |i| {
                let mut rng = replicate_rng(config.master_seed, i);
                let path = ar1::simulate(&params, &mut rng);
                let stat = match mode {
                    Ar1StatMode::Studentized => ar1::studentized_stat(&path, params.theta, sigma),
                    Ar1StatMode::Standardized => ar1::standardized_stat(&path, params.theta, sigma),
                };
                attach_index(i, stat)
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    Upper,
    Lower,
}

impl std::fmt::Display for TailSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TailSide::Upper => "upper",
            TailSide::Lower => "lower",
        })
    }
}

/// Monte Carlo tail probability at one grid point and side, with its Wilson
/// interval, the normal tail, and their ratio.
#[derive(Debug, Clone)]
pub struct TailRatioEstimate {
    pub x: f64,
    pub side: TailSide,
    pub hits: u64,
    pub reps: u64,
    pub p_hat: f64,
    pub p_lo: f64,
    pub p_hi: f64,
    pub normal_tail: f64,
    pub ratio: f64,
    pub ratio_lo: f64,
    pub ratio_hi: f64,
}

fn estimate_side(x: f64, side: TailSide, hits: u64, reps: u64, tail: f64) -> TailRatioEstimate {
    let p_hat = hits as f64 / reps as f64;
    let w = wilson_95(hits, reps);
    // tail > 0 is enforced at validation; NaN here flags a forced-through
    // underflowing point rather than aborting the sweep
    let ratio = p_hat / tail;
    TailRatioEstimate {
        x,
        side,
        hits,
        reps,
        p_hat,
        p_lo: w.lo,
        p_hi: w.hi,
        normal_tail: tail,
        ratio,
        ratio_lo: w.lo / tail,
        ratio_hi: w.hi / tail,
    }
}

/// Upper- and lower-tail ratio estimates on the grid, both sides computed
/// from the same replicate set (shared randomness halves the cost and makes
/// the symmetry comparison sharper).
pub fn tail_ratio_sweep(config: &McConfig) -> Result<Vec<TailRatioEstimate>> {
    if config.grid.is_empty() {
        return Err(Error::Config("tail-ratio sweep needs a nonempty grid".into()));
    }
    let stats = run_replicates(config)?;
    let mut out = Vec::with_capacity(config.grid.len() * 2);
    for &x in &config.grid {
        let tail = std_normal_tail(x)?.value();
        let upper = stats.iter().filter(|&&s| s >= x).count() as u64;
        let lower = stats.iter().filter(|&&s| s <= -x).count() as u64;
        out.push(estimate_side(x, TailSide::Upper, upper, config.reps, tail));
        out.push(estimate_side(x, TailSide::Lower, lower, config.reps, tail));
    }
    Ok(out)
}

/// Fixed tail-ratio CSV schema.
pub fn write_tail_ratio_csv<W: std::io::Write>(
    estimates: &[TailRatioEstimate],
    mut out: W,
) -> Result<()> {
    writeln!(out, "x,side,hits,reps,p_hat,p_lo,p_hi,normal_tail,ratio,ratio_lo,ratio_hi")?;
    for e in estimates {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            g17(e.x),
            e.side,
            e.hits,
            e.reps,
            g17(e.p_hat),
            g17(e.p_lo),
            g17(e.p_hi),
            g17(e.normal_tail),
            g17(e.ratio),
            g17(e.ratio_lo),
            g17(e.ratio_hi),
        )?;
    }
    Ok(())
}

/// KS distance of the replicate statistics from the standard normal.
#[derive(Debug, Clone, Copy)]
pub struct KsEstimate {
    pub d_sup: f64,
    pub reps: u64,
    pub dkw_bound: f64,
}

impl KsEstimate {
    pub fn to_json(&self) -> String {
        format!(
            "{{\n  \"d_sup\": {},\n  \"R\": {},\n  \"dkw_bound\": {}\n}}\n",
            g17(self.d_sup),
            self.reps,
            g17(self.dkw_bound)
        )
    }
}

/// One-sample KS statistic of the empirical statistic law against Φ.
pub fn berry_esseen_distance(config: &McConfig) -> Result<KsEstimate> {
    if config.reps < 100 {
        return Err(Error::Config(format!(
            "Berry-Esseen distance needs reps >= 100, got {}",
            config.reps
        )));
    }
    let stats = run_replicates(config)?;
    let d_sup = ks_one_sample(&stats, |x| 1.0 - std_normal_tail(x).expect("finite").value());
    Ok(KsEstimate { d_sup, reps: config.reps, dkw_bound: dkw_bound(config.reps) })
}

/// Empirical CI coverage over the replicates that produced a usable path.
#[derive(Debug, Clone, Copy)]
pub struct CoverageEstimate {
    pub covered: u64,
    pub reps: u64,
    pub coverage: f64,
    pub binom_lo: f64,
    pub binom_hi: f64,
    pub kappa: f64,
}

impl CoverageEstimate {
    pub fn to_json(&self) -> String {
        format!(
            "{{\n  \"covered\": {},\n  \"R\": {},\n  \"coverage\": {},\n  \"binom_lo\": {},\n  \"binom_hi\": {},\n  \"kappa\": {}\n}}\n",
            self.covered,
            self.reps,
            g17(self.coverage),
            g17(self.binom_lo),
            g17(self.binom_hi),
            g17(self.kappa)
        )
    }
}

/// Fraction of replicates whose interval contains the true θ. Degenerate
/// paths (zero regression denominator — a null event under the admitted
/// noises) are excluded from coverage and returned as a separate count.
pub fn coverage_experiment(
    config: &McConfig,
    kappa: f64,
    regime: CiRegime,
) -> Result<(CoverageEstimate, u64)> {
    config.validate()?;
    let ModelSpec::Ar1 { params, .. } = &config.model else {
        return Err(Error::Config("coverage experiment requires the AR(1) model".into()));
    };
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::Config(format!("kappa must lie in (0,1), got {kappa}")));
    }
    let sigma = params.noise.variance().sqrt();
    let params = *params;
    let outcomes: Vec<Option<bool>> = par_map_replicates(config, |i| {
        let mut rng = replicate_rng(config.master_seed, i);
        let path = ar1::simulate(&params, &mut rng);
        match ar1::confidence_interval(&path, sigma, kappa, regime) {
            Ok(ci) => Ok(Some(ci.contains(params.theta))),
            Err(Error::Numeric(_)) => Ok(None),
            Err(e) => Err(Error::Numeric(format!("replicate {i}: {e}"))),
        }
    })?;
    let degenerate = outcomes.iter().filter(|o| o.is_none()).count() as u64;
    let usable = config.reps - degenerate;
    if usable == 0 {
        return Err(Error::Numeric("every replicate produced a degenerate path".into()));
    }
    let covered = outcomes.iter().filter(|o| **o == Some(true)).count() as u64;
    let w = wilson_95(covered, usable);
    Ok((
        CoverageEstimate {
            covered,
            reps: usable,
            coverage: covered as f64 / usable as f64,
            binom_lo: w.lo,
            binom_hi: w.hi,
            kappa,
        },
        degenerate,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar1::Ar1Noise;
    use crate::erw::StepDistribution;

    fn erw_config(workers: usize) -> McConfig {
        let params = ErwParams::new(0.5, 0.5, 100, StepDistribution::two_point(0.5, 1.5, 0.5).unwrap()).unwrap();
        McConfig {
            reps: 400,
            master_seed: 9,
            workers,
            model: ModelSpec::Erw { params, mode: StatisticMode::Deterministic },
            grid: vec![0.5, 1.0],
        }
    }

    #[test]
    fn replicates_are_worker_independent() {
        let a = run_replicates(&erw_config(1)).unwrap();
        let b = run_replicates(&erw_config(8)).unwrap();
        assert_eq!(a.len(), 400);
        assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
        // and reproducible
        let c = run_replicates(&erw_config(3)).unwrap();
        assert!(a.iter().zip(&c).all(|(x, y)| x.to_bits() == y.to_bits()));
        // a different master seed moves essentially every statistic;
        // continuous steps, so unrelated streams cannot land on a shared
        // lattice value the way two-point sums do
        let params =
            ErwParams::new(0.5, 0.5, 100, StepDistribution::UniformOnZeroTwo).unwrap();
        let mut base = erw_config(2);
        base.model = ModelSpec::Erw { params, mode: StatisticMode::Deterministic };
        let mut alt = base.clone();
        alt.master_seed = 10;
        let d = run_replicates(&base).unwrap();
        let e = run_replicates(&alt).unwrap();
        let moved = d.iter().zip(&e).filter(|(x, y)| x != y).count();
        assert!(moved > 395, "only {moved} of 400 moved under a new seed");
    }

    #[test]
    fn sweep_shape_and_monotonicity() {
        let est = tail_ratio_sweep(&erw_config(2)).unwrap();
        assert_eq!(est.len(), 4);
        assert_eq!(est[0].side, TailSide::Upper);
        assert_eq!(est[1].side, TailSide::Lower);
        for e in &est {
            assert!(e.p_lo <= e.p_hat && e.p_hat <= e.p_hi);
            assert!((e.ratio - e.p_hat / e.normal_tail).abs() < 1e-15);
        }
        // empirical survival function is non-increasing in x
        assert!(est[0].p_hat >= est[2].p_hat);
        assert!(est[1].p_hat >= est[3].p_hat);
    }

    #[test]
    fn degenerate_single_replicate() {
        let mut cfg = erw_config(1);
        cfg.reps = 1;
        let est = tail_ratio_sweep(&cfg).unwrap();
        for e in est {
            assert!(e.p_hat == 0.0 || e.p_hat == 1.0);
            assert!(e.p_lo <= e.p_hat && e.p_hat <= e.p_hi);
        }
    }

    #[test]
    fn validation_rejects_bad_grids() {
        let mut cfg = erw_config(1);
        cfg.grid = vec![1.0, 0.5];
        assert!(cfg.validate().is_err());
        cfg.grid = vec![-0.5];
        assert!(cfg.validate().is_err());
        cfg.grid = vec![9.0]; // 1-Φ(9) ≈ 1.1e-19 < 1e-15
        assert!(cfg.validate().is_err());
        cfg.grid = vec![0.5];
        cfg.reps = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn critical_memory_caps_the_grid() {
        let params = ErwParams::new(0.75, 0.5, 50, StepDistribution::ConstantOne).unwrap();
        let cfg = McConfig {
            reps: 10,
            master_seed: 1,
            workers: 1,
            model: ModelSpec::Erw { params, mode: StatisticMode::Deterministic },
            grid: vec![1.0, 3.5],
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn coverage_smoke_near_zero_width() {
        // κ = 0.99 ⇒ near-zero half-width ⇒ coverage collapses
        let params = Ar1Params::new(0.5, Ar1Noise::uniform(1.0).unwrap(), 50).unwrap();
        let cfg = McConfig {
            reps: 500,
            master_seed: 3,
            workers: 2,
            model: ModelSpec::Ar1 { params, mode: Ar1StatMode::Studentized },
            grid: vec![],
        };
        let (est, degenerate) = coverage_experiment(&cfg, 0.99, CiRegime::Quantile).unwrap();
        assert_eq!(degenerate, 0);
        assert!(est.coverage < 0.2, "coverage {} at kappa 0.99", est.coverage);
        // exponential dominates quantile on the same replicates
        let (exp_est, _) = coverage_experiment(&cfg, 0.2, CiRegime::Exponential).unwrap();
        let (q_est, _) = coverage_experiment(&cfg, 0.2, CiRegime::Quantile).unwrap();
        assert!(exp_est.coverage >= q_est.coverage);
    }

    #[test]
    fn berry_esseen_shape() {
        let mut cfg = erw_config(2);
        cfg.reps = 2000;
        let ks = berry_esseen_distance(&cfg).unwrap();
        assert!(ks.d_sup > 0.0 && ks.d_sup < 0.1);
        assert!((ks.dkw_bound - dkw_bound(2000)).abs() < 1e-15);
        cfg.reps = 50;
        assert!(berry_esseen_distance(&cfg).is_err());
    }
}
