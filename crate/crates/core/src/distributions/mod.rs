//! Income distributions: empirical samples and closed-form parametric
//! families, each exposing its quantile function, CDF, mean, and Lorenz
//! curve.
//!
//! | Family | Quantile F⁻¹(p) | Lorenz L(p) |
//! |---|---|---|
//! | uniform(a, b) | a + (b − a)p | (ap + (b − a)p²/2)/μ |
//! | exponential(λ) | −ln(1 − p)/λ | p + (1 − p)ln(1 − p) |
//! | pareto(α, x₀) | x₀(1 − p)^(−1/α) | 1 − (1 − p)^(1 − 1/α) |
//! | lognormal(m, s) | exp(m + sΦ⁻¹(p)) | Φ(Φ⁻¹(p) − s) |
//! | degenerate(c) | c | p |
//!
//! Each family also evaluates the upper share `1 − L(p)` directly, which
//! keeps the Zenga quantities accurate as `p → 1`.

mod csv;
mod empirical;
pub mod normal;

pub use self::csv::{from_csv_column, from_csv_path, IngestError};
pub use self::empirical::EmpiricalSample;

use crate::error::{check_rank, Error, Result};
use crate::quadrature::{integrate, Complemented, QuadConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform {
    lower: f64,
    upper: f64,
}

impl Uniform {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower >= 0.0 && lower < upper) {
            return Err(Error::InvalidParameter(format!(
                "uniform requires 0 <= a < b, got a = {lower}, b = {upper}"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponential {
    rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "exponential requires rate > 0, got {rate}"
            )));
        }
        Ok(Self { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pareto {
    alpha: f64,
    x_min: f64,
}

impl Pareto {
    pub fn new(alpha: f64, x_min: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "pareto requires a finite alpha > 0, got {alpha}"
            )));
        }
        if alpha <= 1.0 {
            return Err(Error::InfiniteMean { alpha });
        }
        if !(x_min.is_finite() && x_min > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "pareto requires x_min > 0, got {x_min}"
            )));
        }
        Ok(Self { alpha, x_min })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lognormal {
    log_mean: f64,
    log_sd: f64,
}

impl Lognormal {
    pub fn new(log_mean: f64, log_sd: f64) -> Result<Self> {
        if !(log_mean.is_finite() && log_sd.is_finite() && log_sd > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lognormal requires finite log_mean and log_sd > 0, got {log_mean}, {log_sd}"
            )));
        }
        Ok(Self { log_mean, log_sd })
    }

    pub fn log_mean(&self) -> f64 {
        self.log_mean
    }

    pub fn log_sd(&self) -> f64 {
        self.log_sd
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degenerate {
    value: f64,
}

impl Degenerate {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "degenerate requires c > 0, got {value}"
            )));
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// A nonnegative income distribution with finite positive mean.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Empirical(EmpiricalSample),
    Uniform(Uniform),
    Exponential(Exponential),
    Pareto(Pareto),
    Lognormal(Lognormal),
    Degenerate(Degenerate),
}

impl From<EmpiricalSample> for Distribution {
    fn from(s: EmpiricalSample) -> Self {
        Distribution::Empirical(s)
    }
}

impl Distribution {
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Uniform::new(a, b).map(Self::Uniform)
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Exponential::new(rate).map(Self::Exponential)
    }

    pub fn pareto(alpha: f64, x_min: f64) -> Result<Self> {
        Pareto::new(alpha, x_min).map(Self::Pareto)
    }

    pub fn lognormal(log_mean: f64, log_sd: f64) -> Result<Self> {
        Lognormal::new(log_mean, log_sd).map(Self::Lognormal)
    }

    pub fn degenerate(c: f64) -> Result<Self> {
        Degenerate::new(c).map(Self::Degenerate)
    }

    pub fn empirical(values: Vec<f64>) -> Result<Self> {
        EmpiricalSample::new(values).map(Self::Empirical)
    }

    pub fn as_empirical(&self) -> Option<&EmpiricalSample> {
        match self {
            Distribution::Empirical(s) => Some(s),
            _ => None,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Distribution::Empirical(_) => "empirical",
            Distribution::Uniform(_) => "uniform",
            Distribution::Exponential(_) => "exponential",
            Distribution::Pareto(_) => "pareto",
            Distribution::Lognormal(_) => "lognormal",
            Distribution::Degenerate(_) => "degenerate",
        }
    }

    /// Left-continuous quantile `inf{z : F(z) >= p}`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        check_rank("p", p)?;
        Ok(self.quantile_at(p, 1.0 - p))
    }

    /// `F(x)`; zero for negative `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 || x.is_nan() {
            return 0.0;
        }
        match self {
            Distribution::Empirical(s) => s.cdf(x),
            Distribution::Uniform(u) => ((x - u.lower) / (u.upper - u.lower)).clamp(0.0, 1.0),
            Distribution::Exponential(e) => -(-e.rate * x).exp_m1(),
            Distribution::Pareto(d) => {
                if x < d.x_min {
                    0.0
                } else {
                    1.0 - (d.x_min / x).powf(d.alpha)
                }
            }
            Distribution::Lognormal(d) => {
                if x == 0.0 {
                    0.0
                } else {
                    normal::cdf((x.ln() - d.log_mean) / d.log_sd)
                }
            }
            Distribution::Degenerate(d) => {
                if x >= d.value {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Distribution::Empirical(s) => s.mean(),
            Distribution::Uniform(u) => 0.5 * (u.lower + u.upper),
            Distribution::Exponential(e) => 1.0 / e.rate,
            Distribution::Pareto(d) => d.alpha * d.x_min / (d.alpha - 1.0),
            Distribution::Lognormal(d) => (d.log_mean + 0.5 * d.log_sd * d.log_sd).exp(),
            Distribution::Degenerate(d) => d.value,
        }
    }

    /// Supremum of the support, if finite.
    pub fn upper_bound(&self) -> Option<f64> {
        match self {
            Distribution::Empirical(s) => Some(s.max()),
            Distribution::Uniform(u) => Some(u.upper),
            Distribution::Degenerate(d) => Some(d.value),
            _ => None,
        }
    }

    /// True when every unit has the same income.
    pub fn is_degenerate(&self) -> bool {
        match self {
            Distribution::Degenerate(_) => true,
            Distribution::Empirical(s) => s.is_constant(),
            _ => false,
        }
    }

    /// Distribution of `c·X`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be positive, got {c}"
            )));
        }
        match self {
            Distribution::Empirical(s) => Ok(Distribution::Empirical(s.scaled(c)?)),
            Distribution::Uniform(u) => Self::uniform(c * u.lower, c * u.upper),
            Distribution::Exponential(e) => Self::exponential(e.rate / c),
            Distribution::Pareto(d) => Self::pareto(d.alpha, c * d.x_min),
            Distribution::Lognormal(d) => Self::lognormal(d.log_mean + c.ln(), d.log_sd),
            Distribution::Degenerate(d) => Self::degenerate(c * d.value),
        }
    }

    /// Sorted cumulative-weight lattice `0 = c₀ < … < cₙ = 1` of an
    /// empirical sample; `[0, 1]` for parametric families. Integrals of
    /// curve functionals are split on these points.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Distribution::Empirical(s) => s.lattice().to_vec(),
            _ => vec![0.0, 1.0],
        }
    }

    /// Mean of the units ranked above `p`, `μ⁺(p) = ∫ₚ¹ F⁻¹ / (1 − p)`,
    /// computed directly from the quantile function rather than from the
    /// Lorenz curve.
    pub fn upper_mean(&self, p: f64, cfg: &QuadConfig) -> Result<f64> {
        check_rank("p", p)?;
        match self {
            Distribution::Empirical(s) => Ok(s.upper_mean(p)),
            Distribution::Degenerate(d) => Ok(d.value),
            _ => {
                let f = Complemented(|s: f64, q: f64| self.quantile_at(s, q));
                let r = integrate(&f, p, 1.0, cfg)?;
                Ok(r.value / (1.0 - p))
            }
        }
    }

    /// Quantile at rank `p` with complement `q = 1 − p`; the complement is
    /// used wherever it is the better-conditioned argument.
    pub(crate) fn quantile_at(&self, p: f64, q: f64) -> f64 {
        match self {
            Distribution::Empirical(s) => s.quantile(p),
            Distribution::Uniform(u) => {
                if p <= 0.5 {
                    u.lower + (u.upper - u.lower) * p
                } else {
                    u.upper - (u.upper - u.lower) * q
                }
            }
            Distribution::Exponential(e) => {
                if p <= 0.5 {
                    -(-p).ln_1p() / e.rate
                } else {
                    -q.ln() / e.rate
                }
            }
            Distribution::Pareto(d) => d.x_min * q.powf(-1.0 / d.alpha),
            Distribution::Lognormal(d) => {
                let z = if p <= 0.5 {
                    normal::inv_cdf(p)
                } else {
                    normal::inv_cdf_upper(q)
                };
                (d.log_mean + d.log_sd * z).exp()
            }
            Distribution::Degenerate(d) => d.value,
        }
    }

    /// Lorenz ordinate for `p` in `(0, 1)`, unchecked.
    pub(crate) fn lorenz_at(&self, p: f64) -> f64 {
        match self {
            Distribution::Empirical(s) => s.lorenz(p),
            Distribution::Uniform(u) => {
                let mu = 0.5 * (u.lower + u.upper);
                (u.lower * p + 0.5 * (u.upper - u.lower) * p * p) / mu
            }
            Distribution::Exponential(_) => p + (1.0 - p) * (-p).ln_1p(),
            Distribution::Pareto(d) => -((1.0 - 1.0 / d.alpha) * (-p).ln_1p()).exp_m1(),
            Distribution::Lognormal(d) => normal::cdf(normal::inv_cdf(p) - d.log_sd),
            Distribution::Degenerate(_) => p,
        }
    }

    /// `1 − L(p)`, the income share of the units ranked above `p`.
    pub(crate) fn upper_share_at(&self, p: f64, q: f64) -> f64 {
        match self {
            Distribution::Empirical(s) => s.upper_share(p),
            Distribution::Uniform(u) => {
                let mu = 0.5 * (u.lower + u.upper);
                q * (u.lower + 0.5 * (u.upper - u.lower) * (1.0 + p)) / mu
            }
            Distribution::Exponential(_) => {
                let ln_q = if p <= 0.5 { (-p).ln_1p() } else { q.ln() };
                q * (1.0 - ln_q)
            }
            Distribution::Pareto(d) => q.powf(1.0 - 1.0 / d.alpha),
            Distribution::Lognormal(d) => {
                let z = if p <= 0.5 {
                    normal::inv_cdf(p)
                } else {
                    normal::inv_cdf_upper(q)
                };
                normal::cdf(d.log_sd - z)
            }
            Distribution::Degenerate(_) => q,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn quantile_examples() {
        let d = Distribution::degenerate(5.0).unwrap();
        assert_eq!(d.quantile(0.3).unwrap(), 5.0);
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        assert!(close(u.quantile(0.25).unwrap(), 0.25, 1e-15));
        let p = Distribution::pareto(2.0, 1.0).unwrap();
        assert!(close(p.quantile(0.75).unwrap(), 2.0, 1e-15));
    }

    #[test]
    fn quantile_domain() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        for p in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(u.quantile(p), Err(Error::Domain { .. })));
        }
    }

    #[test]
    fn mean_examples() {
        assert!(close(
            Distribution::exponential(1.0).unwrap().mean(),
            1.0,
            1e-15
        ));
        assert!(close(
            Distribution::uniform(0.0, 2.0).unwrap().mean(),
            1.0,
            1e-15
        ));
        assert!(close(
            Distribution::empirical(vec![1.0, 3.0]).unwrap().mean(),
            2.0,
            1e-15
        ));
    }

    #[test]
    fn cdf_examples() {
        assert!(close(
            Distribution::uniform(0.0, 1.0).unwrap().cdf(0.4),
            0.4,
            1e-15
        ));
        assert!(close(
            Distribution::pareto(2.0, 1.0).unwrap().cdf(2.0),
            0.75,
            1e-15
        ));
        assert_eq!(
            Distribution::empirical(vec![1.0, 3.0]).unwrap().cdf(1.0),
            0.5
        );
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            Distribution::pareto(0.5, 1.0),
            Err(Error::InfiniteMean { .. })
        ));
        assert!(matches!(
            Distribution::pareto(1.0, 1.0),
            Err(Error::InfiniteMean { .. })
        ));
        assert!(Distribution::pareto(2.0, 0.0).is_err());
        assert!(Distribution::uniform(-1.0, 1.0).is_err());
        assert!(Distribution::uniform(1.0, 1.0).is_err());
        assert!(Distribution::exponential(0.0).is_err());
        assert!(Distribution::lognormal(0.0, 0.0).is_err());
        assert!(Distribution::degenerate(0.0).is_err());
    }

    #[test]
    fn upper_share_matches_lorenz() {
        let dists = [
            Distribution::uniform(1.0, 4.0).unwrap(),
            Distribution::exponential(2.0).unwrap(),
            Distribution::pareto(2.5, 1.0).unwrap(),
            Distribution::lognormal(0.3, 0.8).unwrap(),
            Distribution::degenerate(2.0).unwrap(),
            Distribution::empirical(vec![0.5, 1.0, 4.0]).unwrap(),
        ];
        for d in &dists {
            for i in 1..100 {
                let p = i as f64 / 100.0;
                let lhs = d.upper_share_at(p, 1.0 - p);
                let rhs = 1.0 - d.lorenz_at(p);
                assert!((lhs - rhs).abs() < 1e-14, "{} at {p}", d.family_name());
            }
        }
    }

    #[test]
    fn upper_mean_matches_lorenz_route() {
        let cfg = QuadConfig::default();
        let dists = [
            Distribution::uniform(0.0, 1.0).unwrap(),
            Distribution::exponential(1.0).unwrap(),
            Distribution::pareto(3.0, 1.0).unwrap(),
            Distribution::lognormal(0.0, 1.0).unwrap(),
        ];
        for d in &dists {
            for &p in &[0.01, 0.3, 0.8, 0.99] {
                let direct = d.upper_mean(p, &cfg).unwrap();
                let via_lorenz = d.mean() * d.upper_share_at(p, 1.0 - p) / (1.0 - p);
                assert!(
                    close(direct, via_lorenz, 1e-10),
                    "{} p={p}",
                    d.family_name()
                );
            }
        }
    }

    #[test]
    fn scale_changes_family_parameters() {
        let d = Distribution::pareto(3.0, 1.0).unwrap().scale(2.0).unwrap();
        assert!(close(
            d.quantile(0.5).unwrap(),
            2.0 * 0.5f64.powf(-1.0 / 3.0),
            1e-14
        ));
        assert!(Distribution::uniform(0.0, 1.0).unwrap().scale(0.0).is_err());
    }
}
