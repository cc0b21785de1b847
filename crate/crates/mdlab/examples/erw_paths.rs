//! A few elephant walks end to end: position, martingale, quadratic
//! variation and both normalized statistics.

use mdlab::erw::{
    coefficients, martingale_stats, simulate_path_fast, statistic_for, ErwParams, StatisticMode,
    StepDistribution,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 1_000usize;
    let steps = StepDistribution::two_point(0.5, 1.5, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    println!(
        "{:>5}  {:>6}  {:>10}  {:>10}  {:>10}  {:>9}  {:>9}",
        "p", "t_n", "s_n", "m_n", "qv", "stat det", "stat self"
    );
    for p in [0.3f64, 0.5, 0.75] {
        let params = ErwParams::new(p, 0.5, n, steps).unwrap();
        let table = coefficients(p, n).unwrap();
        for _ in 0..3 {
            let path = simulate_path_fast(params, &mut rng);
            let stats = martingale_stats(&path, &table).unwrap();
            let det = statistic_for(&path, &table, StatisticMode::Deterministic).unwrap();
            let slf = statistic_for(&path, &table, StatisticMode::SelfNormalized).unwrap();
            println!(
                "{p:>5}  {:>6}  {:>10.3}  {:>10.5}  {:>10.3}  {det:>9.4}  {slf:>9.4}",
                path.t_n(),
                path.s_n(),
                stats.m_n,
                stats.qv
            );
        }
    }

    // at p = 1/2 the predictable quadratic variation is n(sigma^2 + 1) exactly
    let params = ErwParams::new(0.5, 0.5, n, steps).unwrap();
    let table = coefficients(0.5, n).unwrap();
    let stats = martingale_stats(&simulate_path_fast(params, &mut rng), &table).unwrap();
    let exact = n as f64 * (steps.variance() + 1.0);
    println!();
    println!("p = 1/2 qv identity: qv - n(sigma^2+1) = {:.3e}", stats.qv - exact);
}
