//! Walk samplers: the definitional uniform-recall form and the O(1)-memory
//! conditional-law form.

use rand::Rng;

use super::step::StepDistribution;
use crate::error::{Error, Result};

/// Model parameters: memory `p`, first-step up-probability `q` (1/2 unless
/// studying the biased first step), horizon `n`, and the step-size law.
#[derive(Debug, Clone, Copy)]
pub struct ErwParams {
    pub p: f64,
    pub q: f64,
    pub n: usize,
    pub steps: StepDistribution,
}

impl ErwParams {
    pub fn new(p: f64, q: f64, n: usize, steps: StepDistribution) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("memory parameter p must lie in [0,1], got {p}")));
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Domain(format!("first-step probability q must lie in [0,1], got {q}")));
        }
        if n == 0 {
            return Err(Error::Domain("horizon n must be >= 1".into()));
        }
        Ok(ErwParams { p, q, n, steps })
    }
}

/// One realized walk: signs `x_k`, step sizes `z_k`, the sign walk
/// `t_k = Σ x_i` and the weighted walk `s_k = Σ x_i z_i`.
#[derive(Debug, Clone)]
pub struct ErwPath {
    pub params: ErwParams,
    pub signs: Vec<i8>,
    pub step_sizes: Vec<f64>,
    pub sign_sums: Vec<i64>,
    pub weighted_sums: Vec<f64>,
}

impl ErwPath {
    pub fn t_n(&self) -> i64 {
        *self.sign_sums.last().expect("path is never empty")
    }

    pub fn s_n(&self) -> f64 {
        *self.weighted_sums.last().expect("path is never empty")
    }
}

/// Conditional up-probability of the next sign given `t_prev` after `k_prev`
/// steps: `(1 + (2p-1)·t_prev/k_prev)/2`.
pub fn up_probability(p: f64, t_prev: i64, k_prev: usize) -> f64 {
    0.5 * (1.0 + (2.0 * p - 1.0) * t_prev as f64 / k_prev as f64)
}

fn build_path<R, F>(params: ErwParams, rng: &mut R, mut next_sign: F) -> ErwPath
where
    R: Rng,
    F: FnMut(&mut R, &[i8], i64, usize) -> i8,
{
    let n = params.n;
    let mut signs: Vec<i8> = Vec::with_capacity(n);
    let mut step_sizes = Vec::with_capacity(n);
    let mut sign_sums = Vec::with_capacity(n);
    let mut weighted_sums = Vec::with_capacity(n);
    let mut t: i64 = 0;
    let mut s = 0.0;
    for k in 1..=n {
        let x = if k == 1 {
            if rng.gen::<f64>() < params.q {
                1
            } else {
                -1
            }
        } else {
            next_sign(rng, &signs, t, k - 1)
        };
        let z = params.steps.sample(rng);
        signs.push(x);
        step_sizes.push(z);
        t += x as i64;
        s += x as f64 * z;
        sign_sums.push(t);
        weighted_sums.push(s);
    }
    ErwPath { params, signs, step_sizes, sign_sums, weighted_sums }
}

/// Definitional sampler: for `k >= 2` recall a uniformly chosen past sign and
/// copy it with probability `p`, flip it otherwise.
pub fn simulate_path<R: Rng>(params: ErwParams, rng: &mut R) -> ErwPath {
    build_path(params, rng, |rng, signs, _t, k_prev| {
        let recalled = signs[rng.gen_range(0..k_prev)];
        if rng.gen::<f64>() < params.p {
            recalled
        } else {
            -recalled
        }
    })
}

/// Production sampler, equal in law to [`simulate_path`]: draws each sign
/// directly from its conditional law given the running sum, so no recall
/// history is touched.
pub fn simulate_path_fast<R: Rng>(params: ErwParams, rng: &mut R) -> ErwPath {
    build_path(params, rng, |rng, _signs, t, k_prev| {
        if rng.gen::<f64>() < up_probability(params.p, t, k_prev) {
            1
        } else {
            -1
        }
    })
}
