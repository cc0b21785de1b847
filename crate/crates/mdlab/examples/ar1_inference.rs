//! Least-squares inference on one AR(1) path: point estimate, studentized
//! and standardized statistics, and both confidence-interval regimes.

use mdlab::ar1::{
    confidence_interval, fit_summary_json, lse, simulate, standardized_stat, studentized_stat,
    Ar1Noise, Ar1Params, CiRegime,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let theta = 0.6;
    let params = Ar1Params::new(theta, Ar1Noise::uniform(1.0).unwrap(), 2_000).unwrap();
    let sigma = params.noise.variance().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let path = simulate(&params, &mut rng);

    println!("true theta      = {theta}");
    println!("theta_hat       = {:.6}", lse(&path).unwrap());
    println!("studentized     = {:.4}", studentized_stat(&path, theta, sigma).unwrap());
    println!("standardized    = {:.4}", standardized_stat(&path, theta, sigma).unwrap());
    for regime in [CiRegime::Quantile, CiRegime::Exponential] {
        let ci = confidence_interval(&path, sigma, 0.05, regime).unwrap();
        println!(
            "95% {:<11} = [{:.6}, {:.6}]  contains true: {}",
            regime.to_string(),
            ci.lo,
            ci.hi,
            ci.contains(theta)
        );
    }
    println!();
    print!("{}", fit_summary_json(&path, theta, sigma, 0.05, CiRegime::Quantile).unwrap());
}
