//! Empirical coverage of the two interval constructions. The quantile
//! regime should sit at 1-κ; the exponential regime is conservative.

use mdlab::ar1::{Ar1Noise, Ar1Params, CiRegime};
use mdlab::mc::{coverage_experiment, Ar1StatMode, McConfig, ModelSpec};

fn main() {
    let params = Ar1Params::new(0.5, Ar1Noise::uniform(1.0).unwrap(), 2_000).unwrap();
    println!(
        "{:>6}  {:>12}  {:>9}  {:>17}  {:>10}",
        "kappa", "regime", "coverage", "binom 95% band", "degenerate"
    );
    for kappa in [0.1f64, 0.32] {
        for regime in [CiRegime::Quantile, CiRegime::Exponential] {
            let config = McConfig {
                reps: 5_000,
                master_seed: 7,
                workers: 2,
                model: ModelSpec::Ar1 { params, mode: Ar1StatMode::Studentized },
                grid: vec![],
            };
            let (est, degenerate) = coverage_experiment(&config, kappa, regime).unwrap();
            println!(
                "{kappa:>6}  {:>12}  {:>9.4}  [{:.4}, {:.4}]  {degenerate:>10}",
                regime.to_string(),
                est.coverage,
                est.binom_lo,
                est.binom_hi
            );
        }
    }
}
