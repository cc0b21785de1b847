//! Bounded-noise AR(1) simulation and least-squares inference.
//!
//! Model: `X_0 = ε_0`, `X_{k+1} = θ X_k + ε_{k+1}` with `|θ| < 1` and i.i.d.
//! symmetric noise bounded by `H`, so `|X_k| <= H/(1-|θ|)` along every path.
//! The estimation error `θ̂_n - θ = Σ X_{k-1} ε_k / Σ X_{k-1}²` is a
//! martingale over its own quadratic variation `σ² Σ X_{k-1}²`, which is what
//! the studentized statistic and both confidence intervals are built from.

use rand::Rng;

use crate::error::{Error, Result};
use crate::normal::{std_normal_quantile, Probability};
use crate::report::{g17, json_field};

/// Symmetric mean-zero noise with bounded support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ar1Noise {
    /// `ε = ±a` with probability 1/2 each.
    TwoPointSym { a: f64 },
    /// `ε ~ Uniform(-h, h)`.
    Uniform { h: f64 },
}

impl Ar1Noise {
    pub fn two_point_sym(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("two-point noise scale must be > 0, got {a}")));
        }
        Ok(Ar1Noise::TwoPointSym { a })
    }

    pub fn uniform(h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Domain(format!("uniform noise bound must be > 0, got {h}")));
        }
        Ok(Ar1Noise::Uniform { h })
    }

    /// Variance σ².
    pub fn variance(&self) -> f64 {
        match *self {
            Ar1Noise::TwoPointSym { a } => a * a,
            Ar1Noise::Uniform { h } => h * h / 3.0,
        }
    }

    /// Support bound H.
    pub fn bound(&self) -> f64 {
        match *self {
            Ar1Noise::TwoPointSym { a } => a,
            Ar1Noise::Uniform { h } => h,
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            Ar1Noise::TwoPointSym { a } => {
                if rng.gen::<f64>() < 0.5 {
                    a
                } else {
                    -a
                }
            }
            Ar1Noise::Uniform { h } => h * (2.0 * rng.gen::<f64>() - 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Ar1Params {
    pub theta: f64,
    pub noise: Ar1Noise,
    pub n: usize,
}

impl Ar1Params {
    pub fn new(theta: f64, noise: Ar1Noise, n: usize) -> Result<Self> {
        if !(theta.is_finite() && theta.abs() < 1.0) {
            return Err(Error::Domain(format!("AR(1) requires |theta| < 1, got {theta}")));
        }
        if n == 0 {
            return Err(Error::Domain("horizon n must be >= 1".into()));
        }
        Ok(Ar1Params { theta, noise, n })
    }
}

/// One trajectory: `eps[k] = ε_k` and `x[k] = X_k` for `k = 0..=n`.
#[derive(Debug, Clone)]
pub struct Ar1Path {
    pub eps: Vec<f64>,
    pub x: Vec<f64>,
}

impl Ar1Path {
    /// Runs the recursion `X_0 = ε_0`, `X_{k+1} = θX_k + ε_{k+1}` over an
    /// injected noise sequence.
    pub fn from_noise(theta: f64, eps: Vec<f64>) -> Ar1Path {
        assert!(!eps.is_empty(), "need at least ε_0");
        let mut x = Vec::with_capacity(eps.len());
        x.push(eps[0]);
        for k in 1..eps.len() {
            x.push(theta * x[k - 1] + eps[k]);
        }
        Ar1Path { eps, x }
    }

    /// Wraps hand-chosen values `X_0..X_n` for testing the estimator and
    /// statistics directly; the stored noise is zeroed and the AR recursion
    /// is deliberately not enforced.
    pub fn from_values(x: Vec<f64>) -> Ar1Path {
        assert!(!x.is_empty());
        Ar1Path { eps: vec![0.0; x.len()], x }
    }

    /// Number of transitions `n` (the path holds `n + 1` states).
    pub fn n(&self) -> usize {
        self.x.len() - 1
    }
}

/// Simulates one path; draws `ε_0..ε_n` in index order from the given stream.
pub fn simulate<R: Rng>(params: &Ar1Params, rng: &mut R) -> Ar1Path {
    let eps: Vec<f64> = (0..=params.n).map(|_| params.noise.sample(rng)).collect();
    Ar1Path::from_noise(params.theta, eps)
}

// (Σ X_{k-1} X_k, Σ X_{k-1}²) over k = 1..n
fn regression_sums(path: &Ar1Path) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 1..path.x.len() {
        num += path.x[k - 1] * path.x[k];
        den += path.x[k - 1] * path.x[k - 1];
    }
    (num, den)
}

fn positive_den(path: &Ar1Path) -> Result<f64> {
    let (_, den) = regression_sums(path);
    if den <= 0.0 {
        return Err(Error::Numeric(
            "degenerate path: Σ X_{k-1}² = 0, least squares undefined".into(),
        ));
    }
    Ok(den)
}

/// Least-squares estimator `θ̂_n = Σ X_{k-1} X_k / Σ X_{k-1}²`.
pub fn lse(path: &Ar1Path) -> Result<f64> {
    let (num, den) = regression_sums(path);
    if den <= 0.0 {
        return Err(Error::Numeric(
            "degenerate path: Σ X_{k-1}² = 0, least squares undefined".into(),
        ));
    }
    Ok(num / den)
}

/// Studentized statistic `(θ̂_n - θ)·√(Σ X_{k-1}²)/σ`, i.e. the error
/// martingale over the square root of its quadratic variation.
pub fn studentized_stat(path: &Ar1Path, theta_true: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
    }
    let den = positive_den(path)?;
    Ok((lse(path)? - theta_true) * den.sqrt() / sigma)
}

/// Standardized statistic `(θ̂_n - θ)·√((1-θ²)/(nσ⁴))·Σ X_{k-1}²`.
pub fn standardized_stat(path: &Ar1Path, theta_true: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
    }
    if !(theta_true.abs() < 1.0) {
        return Err(Error::Domain(format!("standardized statistic needs |theta| < 1, got {theta_true}")));
    }
    let den = positive_den(path)?;
    let n = path.n() as f64;
    let scale = ((1.0 - theta_true * theta_true) / (n * sigma.powi(4))).sqrt();
    Ok((lse(path)? - theta_true) * scale * den)
}

/// Quadratic variation `σ² Σ_{k=1..n} X_{k-1}²` of the error martingale.
pub fn quadratic_variation(path: &Ar1Path, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
    }
    let (_, den) = regression_sums(path);
    Ok(sigma * sigma * den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiRegime {
    /// Half-width `Φ⁻¹(1-κ/2)·σ/√(Σ X²)` — valid for fixed risk κ.
    Quantile,
    /// Half-width `σ·√(2|ln(κ/2)|)/√(Σ X²)` — wider, stays honest when the
    /// risk κ_n shrinks with n.
    Exponential,
}

impl std::fmt::Display for CiRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CiRegime::Quantile => "quantile",
            CiRegime::Exponential => "exponential",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub kappa: f64,
    pub regime: CiRegime,
}

impl ConfidenceInterval {
    pub fn contains(&self, theta: f64) -> bool {
        self.lo <= theta && theta <= self.hi
    }
}

/// Two-sided level-`1-κ` interval for θ centred at the point estimate.
pub fn confidence_interval(
    path: &Ar1Path,
    sigma: f64,
    kappa: f64,
    regime: CiRegime,
) -> Result<ConfidenceInterval> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::Domain(format!("kappa must lie in (0,1), got {kappa}")));
    }
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
    }
    let den = positive_den(path)?;
    let theta_hat = lse(path)?;
    let half_width = match regime {
        CiRegime::Quantile => {
            let z = std_normal_quantile(Probability::new(1.0 - kappa / 2.0)?)?;
            z * sigma / den.sqrt()
        }
        CiRegime::Exponential => sigma * (2.0 * (kappa / 2.0).ln().abs()).sqrt() / den.sqrt(),
    };
    Ok(ConfidenceInterval { lo: theta_hat - half_width, hi: theta_hat + half_width, kappa, regime })
}

/// Closed form for `E (Σ X_{k-1} ε_k)²`:
/// `nσ⁴/(1-θ²) · (1 + θ^{2(n+2)}/(n(1-θ²)))`.
pub fn expected_error_martingale_sq(theta: f64, sigma2: f64, n: usize) -> f64 {
    let nf = n as f64;
    let om = 1.0 - theta * theta;
    nf * sigma2 * sigma2 / om * (1.0 + theta.powi(2 * (n as i32 + 2)) / (nf * om))
}

/// CSV export `k,eps_k,x_k`, one row per state `k = 0..=n`.
pub fn write_path_csv<W: std::io::Write>(path: &Ar1Path, mut out: W) -> Result<()> {
    writeln!(out, "k,eps_k,x_k")?;
    for k in 0..path.x.len() {
        writeln!(out, "{k},{},{}", g17(path.eps[k]), g17(path.x[k]))?;
    }
    Ok(())
}

/// Fit summary JSON with fields
/// `{theta_hat, stat_studentized, stat_standardized, ci_lo, ci_hi, regime, kappa}`.
pub fn fit_summary_json(
    path: &Ar1Path,
    theta_true: f64,
    sigma: f64,
    kappa: f64,
    regime: CiRegime,
) -> Result<String> {
    let ci = confidence_interval(path, sigma, kappa, regime)?;
    Ok(format!(
        "{{\n  {},\n  {},\n  {},\n  {},\n  {},\n  \"regime\": \"{}\",\n  {}\n}}\n",
        json_field("theta_hat", lse(path)?),
        json_field("stat_studentized", studentized_stat(path, theta_true, sigma)?),
        json_field("stat_standardized", standardized_stat(path, theta_true, sigma)?),
        json_field("ci_lo", ci.lo),
        json_field("ci_hi", ci.hi),
        regime,
        json_field("kappa", kappa),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn theta_zero_collapses_to_noise() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let params = Ar1Params::new(0.0, Ar1Noise::uniform(1.0).unwrap(), 100).unwrap();
        let path = simulate(&params, &mut rng);
        assert_eq!(path.x, path.eps);
    }

    #[test]
    fn injected_constant_noise_converges_geometrically() {
        // θ = 1/2, ε ≡ 1: X_k = 2 - 2^{-k}, exactly representable
        let path = Ar1Path::from_noise(0.5, vec![1.0; 12]);
        for (k, &x) in path.x.iter().enumerate() {
            assert_eq!(x, 2.0 - 0.5f64.powi(k as i32));
        }
    }

    #[test]
    fn paths_respect_the_stationary_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for &(theta, h) in &[(0.5, 1.0), (-0.8, 2.0), (0.95, 0.5)] {
            let params = Ar1Params::new(theta, Ar1Noise::uniform(h).unwrap(), 2000).unwrap();
            let path = simulate(&params, &mut rng);
            let bound = h / (1.0 - theta.abs());
            assert!(path.x.iter().all(|x| x.abs() <= bound));
        }
    }

    #[test]
    fn lse_hand_examples() {
        assert_eq!(lse(&Ar1Path::from_values(vec![1.0, 1.0, 1.0, 1.0])).unwrap(), 1.0);
        assert_eq!(lse(&Ar1Path::from_values(vec![1.0, -1.0, 1.0, -1.0])).unwrap(), -1.0);
        let path = Ar1Path::from_values(vec![1.0, 1.0, -1.0, 1.0]);
        assert!((lse(&path).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        assert!(lse(&Ar1Path::from_values(vec![0.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn lse_error_identity() {
        // θ̂ - θ = Σ X_{k-1} ε_k / Σ X_{k-1}², within 1e-12
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let params = Ar1Params::new(0.6, Ar1Noise::uniform(1.0).unwrap(), 500).unwrap();
        let path = simulate(&params, &mut rng);
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 1..path.x.len() {
            num += path.x[k - 1] * path.eps[k];
            den += path.x[k - 1] * path.x[k - 1];
        }
        let direct = lse(&path).unwrap() - params.theta;
        assert!((direct - num / den).abs() < 1e-12);
    }

    #[test]
    fn studentized_examples() {
        // constant path of 2s: Σ X² = 400 over 100 transitions, θ̂ = 1
        let path = Ar1Path::from_values(vec![2.0; 101]);
        let stat = studentized_stat(&path, 0.9, 1.0).unwrap();
        assert!((stat - 2.0).abs() < 1e-12);
        assert_eq!(studentized_stat(&path, 1.0, 1.0).unwrap(), 0.0);
        // negating the path leaves both sums invariant
        let neg = Ar1Path::from_values(path.x.iter().map(|x| -x).collect());
        assert_eq!(
            studentized_stat(&neg, 0.9, 1.0).unwrap(),
            studentized_stat(&path, 0.9, 1.0).unwrap()
        );
    }

    #[test]
    fn standardized_example_and_ratio() {
        // X = (a, b, 0, …): ab = 10, a² + b² = 100 ⇒ θ̂ = 0.1 with ΣX² = 100
        let a = (120f64.sqrt() + 80f64.sqrt()) / 2.0;
        let b = (120f64.sqrt() - 80f64.sqrt()) / 2.0;
        let mut x = vec![a, b];
        x.extend(std::iter::repeat(0.0).take(99)); // n = 100 transitions
        let path = Ar1Path::from_values(x);
        let stat = standardized_stat(&path, 0.0, 1.0).unwrap();
        assert!((stat - 1.0).abs() < 1e-12, "stat = {stat}");
        // ratio to the studentized statistic is √((1-θ²)ΣX²/(nσ²))
        let stud = studentized_stat(&path, 0.0, 1.0).unwrap();
        let expect = (100.0f64 / 100.0).sqrt();
        assert!((stat / stud - expect).abs() < 1e-12);
    }

    #[test]
    fn confidence_interval_examples() {
        // θ̂ = 0.5 with Σ X² = 400
        let mut x = vec![200f64.sqrt(), 200f64.sqrt()];
        x.extend(std::iter::repeat(0.0).take(3));
        let path = Ar1Path::from_values(x);
        assert!((lse(&path).unwrap() - 0.5).abs() < 1e-13);

        let ci = confidence_interval(&path, 1.0, 0.05, CiRegime::Quantile).unwrap();
        let hw = 1.9599639845400543 / 20.0;
        assert!((ci.lo - (0.5 - hw)).abs() < 1e-12);
        assert!((ci.hi - (0.5 + hw)).abs() < 1e-12);
        assert!((ci.lo - 0.402).abs() < 1e-3 && (ci.hi - 0.598).abs() < 1e-3);

        let ci = confidence_interval(&path, 1.0, 0.05, CiRegime::Exponential).unwrap();
        let hw = (2.0 * 40f64.ln()).sqrt() / 20.0;
        assert!((hw - 0.13581015157406195).abs() < 1e-15);
        assert!((ci.lo - (0.5 - hw)).abs() < 1e-12);
        assert!((ci.hi - (0.5 + hw)).abs() < 1e-12);
        assert!((ci.lo - 0.3642).abs() < 1e-3 && (ci.hi - 0.6358).abs() < 1e-3);

        assert!(confidence_interval(&path, 1.0, 0.0, CiRegime::Quantile).is_err());
        assert!(confidence_interval(&path, 1.0, 1.0, CiRegime::Quantile).is_err());
    }

    #[test]
    fn exponential_width_dominates_for_small_kappa() {
        for &kappa in &[0.3, 0.2, 0.1, 0.05, 0.01] {
            let z = std_normal_quantile(Probability::new(1.0 - kappa / 2.0).unwrap()).unwrap();
            let e = (2.0 * (kappa / 2.0).ln().abs()).sqrt();
            assert!(e >= z, "kappa={kappa}: exponential {e} < quantile {z}");
        }
    }

    #[test]
    fn quadratic_variation_examples() {
        let path = Ar1Path::from_values(vec![1.0, -1.0, 1.0, -1.0]);
        assert_eq!(quadratic_variation(&path, 2.0).unwrap(), 12.0);
        assert_eq!(quadratic_variation(&Ar1Path::from_values(vec![0.0; 4]), 1.0).unwrap(), 0.0);
        let q1 = quadratic_variation(&path, 1.0).unwrap();
        let q2 = quadratic_variation(&path, 2.0).unwrap();
        assert_eq!(q2, 4.0 * q1);
    }

    #[test]
    fn fit_summary_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let params = Ar1Params::new(0.5, Ar1Noise::uniform(1.0).unwrap(), 200).unwrap();
        let path = simulate(&params, &mut rng);
        let sigma = params.noise.variance().sqrt();
        let json = fit_summary_json(&path, 0.5, sigma, 0.05, CiRegime::Quantile).unwrap();
        for key in
            ["theta_hat", "stat_studentized", "stat_standardized", "ci_lo", "ci_hi", "regime", "kappa"]
        {
            assert!(json.contains(&format!("\"{key}\"")), "missing {key} in {json}");
        }
        assert!(json.contains("\"quantile\""));
    }

    #[test]
    fn path_csv_shape() {
        let path = Ar1Path::from_noise(0.5, vec![1.0, -1.0, 0.25]);
        let mut buf = Vec::new();
        write_path_csv(&path, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,eps_k,x_k");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,"));
    }

    #[test]
    fn param_validation() {
        assert!(Ar1Params::new(1.0, Ar1Noise::uniform(1.0).unwrap(), 5).is_err());
        assert!(Ar1Params::new(-1.2, Ar1Noise::uniform(1.0).unwrap(), 5).is_err());
        assert!(Ar1Noise::uniform(0.0).is_err());
        assert!(Ar1Noise::two_point_sym(-1.0).is_err());
    }
}
