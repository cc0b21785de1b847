//! Elephant random walk with random step sizes.
//!
//! Signs follow the full-memory recall dynamics with memory parameter `p`
//! (copy a uniformly chosen past sign with probability `p`, flip it
//! otherwise); each sign is multiplied by an i.i.d. mean-one bounded step
//! size. `a_n S_n` recentred for the first step is a martingale whose
//! normalized versions are the objects of the tail-ratio experiments.

mod coeffs;
mod martingale;
mod path;
mod step;

pub use coeffs::{closed_form_ln_a, coefficients, CoefficientTable};
pub use martingale::{martingale_stats, normalized_statistic, statistic_for, MartingaleStats, StatisticMode};
pub use path::{simulate_path, simulate_path_fast, up_probability, ErwParams, ErwPath};
pub use step::StepDistribution;

use crate::error::{Error, Result};

/// Rate regime of the memory parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Diffusive,
    Intermediate,
    Critical,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Diffusive => "diffusive",
            Regime::Intermediate => "intermediate",
            Regime::Critical => "critical",
        };
        f.write_str(s)
    }
}

/// Expected error scales for the tail-ratio expansion (unit constants).
#[derive(Debug, Clone, Copy)]
pub struct Envelope {
    pub epsilon_n: f64,
    pub delta_n: f64,
    pub regime: Regime,
}

/// Rate orders of the moderate-deviation error terms:
/// `n^{-1/2}` for `p <= 1/2`, `n^{-(3-4p)/2}` for `1/2 < p < 3/4`,
/// `(ln n)^{-1/2}` at `p = 3/4`. Reporting aid only.
pub fn theoretical_envelope(p: f64, n: u64) -> Result<Envelope> {
    if !(p > 0.0 && p <= 0.75) {
        return Err(Error::Domain(format!("envelope requires p in (0, 3/4], got {p}")));
    }
    if n < 3 {
        return Err(Error::Domain(format!("envelope requires n >= 3, got {n}")));
    }
    let nf = n as f64;
    let (rate, regime) = if p <= 0.5 {
        (nf.powf(-0.5), Regime::Diffusive)
    } else if p < 0.75 {
        (nf.powf(-(3.0 - 4.0 * p) / 2.0), Regime::Intermediate)
    } else {
        (nf.ln().powf(-0.5), Regime::Critical)
    };
    Ok(Envelope { epsilon_n: rate, delta_n: rate, regime })
}
