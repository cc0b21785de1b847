//! Kolmogorov distance to the normal law as the horizon grows, fitted to
//! the c·ln n/√n rate.

use mdlab::erw::{ErwParams, StatisticMode, StepDistribution};
use mdlab::mc::{berry_esseen_distance, rate_fit, McConfig, ModelSpec};

fn main() {
    let mut points = Vec::new();
    println!("{:>6}  {:>10}  {:>10}", "n", "d_sup", "dkw bound");
    for (i, n) in [100usize, 1_000, 10_000].into_iter().enumerate() {
        let params =
            ErwParams::new(0.5, 0.5, n, StepDistribution::two_point(0.5, 1.5, 0.5).unwrap())
                .unwrap();
        let config = McConfig {
            reps: 10_000,
            master_seed: 50 + i as u64,
            workers: 2,
            model: ModelSpec::Erw { params, mode: StatisticMode::Deterministic },
            grid: vec![],
        };
        let est = berry_esseen_distance(&config).unwrap();
        println!("{n:>6}  {:>10.5}  {:>10.5}", est.d_sup, est.dkw_bound);
        points.push((n as f64, est.d_sup));
    }
    let fit = rate_fit(&points).unwrap();
    println!();
    println!("fit d = c ln(n)/sqrt(n): c_hat = {:.4}", fit.c_hat);
    println!("residuals: {:?}", fit.residuals);
}
