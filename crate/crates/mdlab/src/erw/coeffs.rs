//! Deterministic coefficients γ_k, a_k, v_k of the martingale construction.

use std::io::Write;

use crate::error::{Error, Result};
use crate::report::g17;
use crate::special::ln_gamma;

/// Table of `γ_k = 1 + (2p-1)/k`, `a_k` (with `a_1 = 1`, `a_{k+1} = a_k/γ_k`)
/// and `v_k = Σ_{i<=k} a_i²` for a fixed memory parameter `p`.
///
/// The recurrence runs in log space: `a_n` spans `n^{1-2p}`, which for small
/// `p` grows fast enough that a product form would drift.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub p: f64,
    /// γ_1..γ_{n-1}
    pub gamma: Vec<f64>,
    /// a_1..a_n
    pub a: Vec<f64>,
    /// ln a_1..ln a_n
    pub log_a: Vec<f64>,
    /// v_1..v_n
    pub v: Vec<f64>,
}

/// Builds the coefficient table for `p in (0,1]` up to horizon `n`.
pub fn coefficients(p: f64, n: usize) -> Result<CoefficientTable> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain(format!(
            "coefficients require p in (0,1] so that every gamma_k > 0, got {p}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("coefficients require n >= 1".into()));
    }
    let d = 2.0 * p - 1.0;
    let mut gamma = Vec::with_capacity(n.saturating_sub(1));
    let mut log_a = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    log_a.push(0.0);
    a.push(1.0);
    v.push(1.0);
    for k in 1..n {
        let kf = k as f64;
        gamma.push(1.0 + d / kf);
        let la = log_a[k - 1] - (d / kf).ln_1p();
        let ak = la.exp();
        log_a.push(la);
        a.push(ak);
        v.push(v[k - 1] + ak * ak);
    }
    Ok(CoefficientTable { p, gamma, a, log_a, v })
}

impl CoefficientTable {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a_n(&self) -> f64 {
        *self.a.last().expect("table is never empty")
    }

    pub fn v_n(&self) -> f64 {
        *self.v.last().expect("table is never empty")
    }

    /// CSV export with header `k,gamma_k,a_k,v_k`; `gamma_k` is blank on the
    /// last row (γ_n is never used by the recurrence).
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "k,gamma_k,a_k,v_k")?;
        for k in 1..=self.n() {
            let gamma = if k < self.n() { g17(self.gamma[k - 1]) } else { String::new() };
            writeln!(out, "{k},{gamma},{},{}", g17(self.a[k - 1]), g17(self.v[k - 1]))?;
        }
        Ok(())
    }
}

/// Closed form `ln a_k = lnΓ(k) + lnΓ(2p) - lnΓ(k+2p-1)`, the independent
/// cross-check of the recurrence.
pub fn closed_form_ln_a(p: f64, k: usize) -> f64 {
    let kf = k as f64;
    ln_gamma(kf) + ln_gamma(2.0 * p) - ln_gamma(kf + 2.0 * p - 1.0)
}
