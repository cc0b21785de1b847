//! Standard normal tail, quantile, and Mills-ratio sandwich bounds.
//!
//! The tail is computed through the complementary error function rather than
//! as `1 - cdf`, so it keeps full *relative* accuracy deep into the tail —
//! every tail-ratio experiment in this crate divides by it.

use crate::error::{Error, Result};
use crate::special::erfc;

pub const FRAC_1_SQRT_2PI: f64 = 0.3989422804014326779399460599343818684;
pub const FRAC_1_SQRT_PI: f64 = 0.5641895835477562869480794515607725858;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// A probability; the constructor enforces `0 <= value <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain(format!("probability must lie in [0,1], got {value}")));
        }
        Ok(Probability(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Mills-ratio sandwich around `1 - Φ(x)`:
/// `e^{-x²/2}/(√(2π)(1+x)) <= 1-Φ(x) <= e^{-x²/2}/(√π(1+x))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MillsBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Upper tail `1 - Φ(x)` with relative error below 1e-12 for `|x| <= 8`.
///
/// Beyond `x = 38` the tail underflows and is returned as exactly 0
/// (and symmetrically as 1 below `x = -38`); ratio experiments reject
/// such grid points during validation.
pub fn std_normal_tail(x: f64) -> Result<Probability> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("std_normal_tail requires finite x, got {x}")));
    }
    if x > 38.0 {
        return Probability::new(0.0);
    }
    if x < -38.0 {
        return Probability::new(1.0);
    }
    Probability::new(0.5 * erfc(x * FRAC_1_SQRT_2))
}

/// Standard normal density.
pub fn std_normal_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Quantile `Φ⁻¹(p)`: rational initial guess refined by two Newton steps
/// against [`std_normal_tail`], giving `|Φ(x) - p| <= 1e-12`.
///
/// For `p >= 1/2` the equation solved is `tail(x) = 1 - p`, where the
/// complement is exact in floating point, so quantile/tail round trips
/// hold to the accuracy of the tail itself.
pub fn std_normal_quantile(p: Probability) -> Result<f64> {
    let p = p.value();
    if p <= 0.0 || p >= 1.0 {
        return Err(Error::Domain(format!("quantile requires p in (0,1), got {p}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        Ok(upper_tail_inverse(1.0 - p))
    } else {
        Ok(-upper_tail_inverse(p))
    }
}

// Coefficients of Acklam's rational approximation to Φ⁻¹.
const ACK_A: [f64; 6] = [
    -3.969683028665376e1,
    2.209460984245205e2,
    -2.759285104469687e2,
    1.38357751867269e2,
    -3.066479806614716e1,
    2.506628277459239,
];
const ACK_B: [f64; 5] = [
    -5.447609879822406e1,
    1.615858368580409e2,
    -1.556989798598866e2,
    6.680131188771972e1,
    -1.328068155288572e1,
];
const ACK_C: [f64; 6] = [
    -7.784894002430293e-3,
    -3.223964580411365e-1,
    -2.400758277161838,
    -2.549732539343734,
    4.374664141464968,
    2.938163982698783,
];
const ACK_D: [f64; 4] = [
    7.784695709041462e-3,
    3.224671290700398e-1,
    2.445134137142996,
    3.754408661907416,
];

// Solves tail(x) = s for s in (0, 1/2], returning x >= 0.
fn upper_tail_inverse(s: f64) -> f64 {
    let mut x = if s < 0.02425 {
        let q = (-2.0 * s.ln()).sqrt();
        -(((((ACK_C[0] * q + ACK_C[1]) * q + ACK_C[2]) * q + ACK_C[3]) * q + ACK_C[4]) * q
            + ACK_C[5])
            / ((((ACK_D[0] * q + ACK_D[1]) * q + ACK_D[2]) * q + ACK_D[3]) * q + 1.0)
    } else {
        let q = 0.5 - s;
        let r = q * q;
        (((((ACK_A[0] * r + ACK_A[1]) * r + ACK_A[2]) * r + ACK_A[3]) * r + ACK_A[4]) * r
            + ACK_A[5])
            * q
            / (((((ACK_B[0] * r + ACK_B[1]) * r + ACK_B[2]) * r + ACK_B[3]) * r + ACK_B[4]) * r
                + 1.0)
    };
    for _ in 0..2 {
        let f = 0.5 * erfc(x * FRAC_1_SQRT_2) - s;
        x += f / std_normal_pdf(x);
    }
    x
}

/// Mills-ratio bounds at `x >= 0`; `lower/upper = 1/√2` identically.
pub fn mills_bounds(x: f64) -> Result<MillsBounds> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("mills_bounds requires x >= 0, got {x}")));
    }
    let kernel = (-0.5 * x * x).exp() / (1.0 + x);
    Ok(MillsBounds {
        lower: FRAC_1_SQRT_2PI * kernel,
        upper: FRAC_1_SQRT_PI * kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn tail_frozen_values() {
        // oracle: mpmath erfc(x/√2)/2 at 50 digits
        assert_eq!(std_normal_tail(0.0).unwrap().value(), 0.5);
        assert!(rel(std_normal_tail(1.0).unwrap().value(), 0.15865525393145705) < 1e-14);
        assert!(rel(std_normal_tail(3.0).unwrap().value(), 1.3498980316300946e-3) < 1e-14);
        assert!(rel(std_normal_tail(8.0).unwrap().value(), 6.220960574271784e-16) < 1e-12);
        assert_eq!(std_normal_tail(38.5).unwrap().value(), 0.0);
        assert_eq!(std_normal_tail(-38.5).unwrap().value(), 1.0);
        assert!(std_normal_tail(f64::NAN).is_err());
        assert!(std_normal_tail(f64::INFINITY).is_err());
    }

    #[test]
    fn quantile_frozen_values() {
        assert_eq!(std_normal_quantile(Probability::new(0.5).unwrap()).unwrap(), 0.0);
        let q975 = std_normal_quantile(Probability::new(0.975).unwrap()).unwrap();
        let q995 = std_normal_quantile(Probability::new(0.995).unwrap()).unwrap();
        let q95 = std_normal_quantile(Probability::new(0.95).unwrap()).unwrap();
        assert!(rel(q975, 1.9599639845400543) < 1e-12);
        assert!(rel(q995, 2.575829303548901) < 1e-12);
        assert!(rel(q95, 1.6448536269514726) < 1e-12);
        // antisymmetry
        let lo = std_normal_quantile(Probability::new(0.025).unwrap()).unwrap();
        assert!((lo + q975).abs() < 1e-13);
        assert!(std_normal_quantile(Probability::new(0.0).unwrap()).is_err());
        assert!(std_normal_quantile(Probability::new(1.0).unwrap()).is_err());
    }

    #[test]
    fn quantile_probability_space_accuracy() {
        // |Φ(quantile(p)) - p| <= 1e-12 across a wide grid
        for i in 1..400 {
            let p = i as f64 / 400.0;
            let q = std_normal_quantile(Probability::new(p).unwrap()).unwrap();
            let phi = 1.0 - std_normal_tail(q).unwrap().value();
            assert!((phi - p).abs() <= 1e-12, "p={p}: |Φ(q)-p|={}", (phi - p).abs());
        }
    }

    #[test]
    fn quantile_tail_round_trip() {
        // tail(quantile(1-t)) = t, with the complement taken where it is
        // exact (p >= 1/2); checked on a log grid of t down to 1e-12
        let mut t = 0.5;
        while t >= 1e-12 {
            let p = 1.0 - t;
            let t_eff = 1.0 - p; // exact by Sterbenz for p >= 1/2
            let q = std_normal_quantile(Probability::new(p).unwrap()).unwrap();
            let back = std_normal_tail(q).unwrap().value();
            assert!(
                rel(back, t_eff) <= 1e-9,
                "t={t:e}: round-trip {back:e} vs {t_eff:e}"
            );
            t /= 1.9;
        }
    }

    #[test]
    fn mills_frozen_values() {
        let m0 = mills_bounds(0.0).unwrap();
        assert!(rel(m0.lower, 0.3989422804014327) < 1e-15);
        assert!(rel(m0.upper, 0.5641895835477563) < 1e-15);
        let m1 = mills_bounds(1.0).unwrap();
        assert!(rel(m1.lower, 0.12098536225957167) < 1e-14);
        assert!(rel(m1.upper, 0.17109914015610828) < 1e-14);
        // tail(1) = 0.158655... sits inside
        let t1 = std_normal_tail(1.0).unwrap().value();
        assert!(m1.lower <= t1 && t1 <= m1.upper);
        assert!(mills_bounds(-0.1).is_err());
    }

    #[test]
    fn mills_constant_ratio() {
        for i in 0..=100 {
            let x = i as f64 * 0.1;
            let m = mills_bounds(x).unwrap();
            assert!(rel(m.lower / m.upper, FRAC_1_SQRT_2) < 1e-15);
        }
    }

    #[test]
    fn sandwich_symmetry_monotonicity() {
        let mut prev = f64::INFINITY;
        for i in 0..=1000 {
            let x = i as f64 * 0.01;
            let t = std_normal_tail(x).unwrap().value();
            let m = mills_bounds(x).unwrap();
            assert!(m.lower <= t && t <= m.upper, "sandwich fails at x={x}");
            assert!(t < prev, "not strictly decreasing at x={x}");
            prev = t;
            if x <= 8.0 {
                let s = t + std_normal_tail(-x).unwrap().value();
                assert!((s - 1.0).abs() < 1e-12, "symmetry fails at x={x}");
            }
        }
    }
}
