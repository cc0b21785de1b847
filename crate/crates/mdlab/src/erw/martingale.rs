//! Martingale decomposition of the weighted walk and its normalized
//! statistics.
//!
//! `M_n = a_n S_n - (2q-1)` decomposes into increments
//! `ΔM_{n,k} = a_n x_k (z_k - 1) + a_k (t_k - γ_{k-1} t_{k-1})`,
//! with the first-step term `a_n x_1 (z_1 - 1) + (x_1 - (2q-1))`.
//! The conditional variance of the k-th increment has the closed form
//! `a_n²σ² + a_k² - (2p-1)² a_k² (t_{k-1}/(k-1))²` (k = 1 contributes
//! `1 + a_n²σ²`), which summed along the path gives the quadratic variation.

use super::coeffs::CoefficientTable;
use super::path::ErwPath;
use crate::error::{Error, Result};

/// Which normalizer divides the martingale value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatisticMode {
    /// `√(v_n + n a_n² σ²)` — the known-variance normalizer.
    Deterministic,
    /// `√(v_n + a_n² Σ (z_i - 1)²)` — observable from the realized steps.
    SelfNormalized,
}

#[derive(Debug, Clone)]
pub struct MartingaleStats {
    pub m_n: f64,
    pub increments: Vec<f64>,
    pub qv: f64,
    pub det_normalizer: f64,
    pub self_normalizer: f64,
}

fn check_compatible(path: &ErwPath, table: &CoefficientTable) -> Result<()> {
    if table.p != path.params.p {
        return Err(Error::Consistency(format!(
            "coefficient table built for p = {}, path for p = {}",
            table.p, path.params.p
        )));
    }
    if table.n() < path.params.n {
        return Err(Error::Consistency(format!(
            "coefficient table covers n = {}, path needs n = {}",
            table.n(),
            path.params.n
        )));
    }
    Ok(())
}

/// Full decomposition: terminal value, increments, quadratic variation and
/// both normalizers.
pub fn martingale_stats(path: &ErwPath, table: &CoefficientTable) -> Result<MartingaleStats> {
    check_compatible(path, table)?;
    let n = path.params.n;
    let p = path.params.p;
    let q = path.params.q;
    let sigma2 = path.params.steps.variance();
    let a_n = table.a[n - 1];
    let v_n = table.v[n - 1];
    let d2 = (2.0 * p - 1.0) * (2.0 * p - 1.0);

    let m_n = a_n * path.s_n() - (2.0 * q - 1.0);

    let mut increments = Vec::with_capacity(n);
    let mut qv = 1.0 + a_n * a_n * sigma2;
    let mut sq_sum = 0.0; // Σ (z_i - 1)²
    for k in 1..=n {
        let x = path.signs[k - 1] as f64;
        let z = path.step_sizes[k - 1];
        sq_sum += (z - 1.0) * (z - 1.0);
        let size_part = a_n * x * (z - 1.0);
        if k == 1 {
            increments.push(size_part + (x - (2.0 * q - 1.0)));
        } else {
            let a_k = table.a[k - 1];
            let t_k = path.sign_sums[k - 1] as f64;
            let t_prev = path.sign_sums[k - 2] as f64;
            increments.push(size_part + a_k * (t_k - table.gamma[k - 2] * t_prev));
            let frac = t_prev / (k - 1) as f64;
            qv += a_n * a_n * sigma2 + a_k * a_k - d2 * a_k * a_k * frac * frac;
        }
    }

    let det_normalizer = (v_n + n as f64 * a_n * a_n * sigma2).sqrt();
    let self_normalizer = (v_n + a_n * a_n * sq_sum).sqrt();
    Ok(MartingaleStats { m_n, increments, qv, det_normalizer, self_normalizer })
}

/// `m_n` over the chosen normalizer.
pub fn normalized_statistic(stats: &MartingaleStats, mode: StatisticMode) -> Result<f64> {
    let norm = match mode {
        StatisticMode::Deterministic => stats.det_normalizer,
        StatisticMode::SelfNormalized => stats.self_normalizer,
    };
    if !(norm > 0.0) {
        return Err(Error::Numeric(format!("normalizer must be positive, got {norm}")));
    }
    Ok(stats.m_n / norm)
}

/// The normalized statistic alone, without materializing increments — the
/// per-replicate hot path of the Monte Carlo engine.
pub fn statistic_for(path: &ErwPath, table: &CoefficientTable, mode: StatisticMode) -> Result<f64> {
    check_compatible(path, table)?;
    let n = path.params.n;
    let a_n = table.a[n - 1];
    let v_n = table.v[n - 1];
    let m_n = a_n * path.s_n() - (2.0 * path.params.q - 1.0);
    let norm = match mode {
        StatisticMode::Deterministic => {
            (v_n + n as f64 * a_n * a_n * path.params.steps.variance()).sqrt()
        }
        StatisticMode::SelfNormalized => {
            let sq_sum: f64 = path.step_sizes.iter().map(|&z| (z - 1.0) * (z - 1.0)).sum();
            (v_n + a_n * a_n * sq_sum).sqrt()
        }
    };
    if !(norm > 0.0) {
        return Err(Error::Numeric(format!("normalizer must be positive, got {norm}")));
    }
    Ok(m_n / norm)
}
