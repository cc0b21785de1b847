//! Mean-one bounded step-size distributions.

use rand::Rng;

use crate::error::{Error, Result};

/// Distribution of the i.i.d. step sizes `Z_k`: mean exactly 1, support in
/// `[0, C]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepDistribution {
    /// `Z ≡ 1`: the classic elephant random walk.
    ConstantOne,
    /// `Z = z1` with probability `w`, else `z2`; requires `w·z1+(1-w)·z2 = 1`.
    TwoPoint { z1: f64, z2: f64, w: f64 },
    /// `Z ~ Uniform(0, 2)`.
    UniformOnZeroTwo,
}

impl StepDistribution {
    /// Validated two-point distribution; the mean-one constraint is checked
    /// to 1e-12.
    pub fn two_point(z1: f64, z2: f64, w: f64) -> Result<Self> {
        if !(z1.is_finite() && z2.is_finite() && z1 >= 0.0 && z2 >= 0.0) {
            return Err(Error::Domain(format!(
                "two-point support must be finite and nonnegative, got ({z1}, {z2})"
            )));
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::Domain(format!("two-point weight must lie in [0,1], got {w}")));
        }
        let mean = w * z1 + (1.0 - w) * z2;
        if (mean - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "two-point steps must have mean 1, got w*z1+(1-w)*z2 = {mean}"
            )));
        }
        Ok(StepDistribution::TwoPoint { z1, z2, w })
    }

    /// Variance σ².
    pub fn variance(&self) -> f64 {
        match *self {
            StepDistribution::ConstantOne => 0.0,
            StepDistribution::TwoPoint { z1, z2, w } => {
                (w * z1 * z1 + (1.0 - w) * z2 * z2 - 1.0).max(0.0)
            }
            StepDistribution::UniformOnZeroTwo => 1.0 / 3.0,
        }
    }

    /// Support bound C (always >= 1 for a mean-one distribution).
    pub fn bound(&self) -> f64 {
        match *self {
            StepDistribution::ConstantOne => 1.0,
            StepDistribution::TwoPoint { z1, z2, .. } => z1.max(z2),
            StepDistribution::UniformOnZeroTwo => 2.0,
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            StepDistribution::ConstantOne => 1.0,
            StepDistribution::TwoPoint { z1, z2, w } => {
                if rng.gen::<f64>() < w {
                    z1
                } else {
                    z2
                }
            }
            StepDistribution::UniformOnZeroTwo => 2.0 * rng.gen::<f64>(),
        }
    }
}
