//! Binomial intervals, Kolmogorov–Smirnov distances, and the rate fit.

use crate::error::{Error, Result};

/// Φ⁻¹(0.975), frozen: every Monte Carlo proportion in this crate carries a
/// 95% Wilson score interval.
pub const WILSON_Z95: f64 = 1.9599639845400543;

#[derive(Debug, Clone, Copy)]
pub struct WilsonInterval {
    pub lo: f64,
    pub hi: f64,
}

/// 95% Wilson score interval for `hits` successes out of `reps` trials.
/// Chosen over the normal interval because it behaves sanely at the tiny hit
/// counts deep-tail estimation produces.
pub fn wilson_95(hits: u64, reps: u64) -> WilsonInterval {
    assert!(reps > 0 && hits <= reps, "wilson_95 needs 0 <= hits <= reps, reps > 0");
    let n = reps as f64;
    let p = hits as f64 / n;
    let z2 = WILSON_Z95 * WILSON_Z95;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let half = WILSON_Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    WilsonInterval {
        lo: ((center - half) / denom).max(0.0),
        hi: ((center + half) / denom).min(1.0),
    }
}

/// One-sample KS statistic `sup_x |F̂(x) - F(x)|` against a continuous CDF,
/// computed exactly from the sorted sample: the supremum is attained at a
/// sample point from one side or the other.
pub fn ks_one_sample<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    assert!(!sample.is_empty(), "KS statistic of an empty sample");
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite statistic value"));
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d
}

/// Two-sample KS statistic `sup_x |F̂_a(x) - F̂_b(x)|` by a sorted merge walk.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty());
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).expect("non-finite sample value"));
    sb.sort_by(|x, y| x.partial_cmp(y).expect("non-finite sample value"));
    let (na, nb) = (sa.len() as f64, sb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < sa.len() && j < sb.len() {
        // consume every copy of the evaluation point from both samples before
        // comparing, so ties don't register as a spurious gap
        let t = sa[i].min(sb[j]);
        while i < sa.len() && sa[i] == t {
            i += 1;
        }
        while j < sb.len() && sb[j] == t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Distribution-free 95% bound `√(ln(2/0.05)/(2R))` on the empirical-CDF
/// error.
pub fn dkw_bound(reps: u64) -> f64 {
    ((2.0f64 / 0.05).ln() / (2.0 * reps as f64)).sqrt()
}

#[derive(Debug, Clone)]
pub struct RateFit {
    pub c_hat: f64,
    pub residuals: Vec<f64>,
}

/// Least-squares scale of the model `d ≈ c·ln n/√n`:
/// `c_hat = Σ d_j r_j / Σ r_j²` with `r_j = ln n_j/√n_j`.
pub fn rate_fit(points: &[(f64, f64)]) -> Result<RateFit> {
    if points.is_empty() {
        return Err(Error::Domain("rate_fit needs at least one point".into()));
    }
    if let Some((n, _)) = points.iter().find(|(n, _)| !(*n >= 3.0)) {
        return Err(Error::Domain(format!("rate_fit needs n >= 3 at every point, got {n}")));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    let r: Vec<f64> = points.iter().map(|&(n, _)| n.ln() / n.sqrt()).collect();
    for (&(_, d), &rj) in points.iter().zip(&r) {
        num += d * rj;
        den += rj * rj;
    }
    let c_hat = num / den;
    let residuals = points.iter().zip(&r).map(|(&(_, d), &rj)| d - c_hat * rj).collect();
    Ok(RateFit { c_hat, residuals })
}
