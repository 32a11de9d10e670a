//! Rank-dependent welfare weights `ν(p)` and their profiles.
//!
//! ```text
//! ν_G(p)  = 2(1 − p)
//! ν_Gk(p) = (k + 1)(1 − p)^k
//! ν_B(p)  = −ln p
//! ν*_Z(p) = (−ln p + p − 1)/(1 − p)²
//! β_Z(p)  = ((1 − p)/(1 − L(p)))² = (μ/μ⁺(p))²
//! ν_Z(p)  = ν*_Z(p)·β_Z(p)
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::curves::open_grid;
use crate::distributions::Distribution;
use crate::error::{check_rank, Error, Result};
use crate::format::round15;
use crate::indices::IndexKind;
use crate::quadrature::{
    integrate_improper_at_zero, integrate_piecewise, Complemented, QuadConfig,
};

/// Below this distance from 1, `ν*_Z` is summed from its series.
const SERIES_CUTOFF: f64 = 1e-4;

pub fn weight_gini(p: f64) -> Result<f64> {
    check_rank("p", p)?;
    Ok(2.0 * (1.0 - p))
}

pub fn weight_gini_k(p: f64, k: f64) -> Result<f64> {
    check_rank("p", p)?;
    if !(k.is_finite() && k >= 1.0) {
        return Err(Error::InvalidParameter(format!("k must be >= 1, got {k}")));
    }
    Ok((k + 1.0) * (1.0 - p).powf(k))
}

pub fn weight_bonferroni(p: f64) -> Result<f64> {
    check_rank("p", p)?;
    Ok(-p.ln())
}

pub fn weight_zenga_star(p: f64) -> Result<f64> {
    check_rank("p", p)?;
    Ok(nu_star(p, 1.0 - p))
}

pub fn beta_zenga(d: &Distribution, p: f64) -> Result<f64> {
    check_rank("p", p)?;
    beta_at(d, p, 1.0 - p)
}

/// `lim_{p→1} β_Z(p)`: `(μ/x_max)²` for bounded support, 0 otherwise.
pub fn beta_zenga_at_one(d: &Distribution) -> f64 {
    match d.upper_bound() {
        Some(top) => (d.mean() / top).powi(2),
        None => 0.0,
    }
}

pub fn weight_zenga(d: &Distribution, p: f64) -> Result<f64> {
    check_rank("p", p)?;
    let q = 1.0 - p;
    Ok(nu_star(p, q) * beta_at(d, p, q)?)
}

/// `ν*_Z` at rank `p` with complement `q`.
pub(crate) fn nu_star(p: f64, q: f64) -> f64 {
    if q < SERIES_CUTOFF {
        // Σ_{k=2..8} q^(k−2)/k
        (2..=8).rev().fold(0.0, |acc, k| acc * q + 1.0 / k as f64)
    } else {
        let neg_ln_p = if p > 0.5 { -(-q).ln_1p() } else { -p.ln() };
        (neg_ln_p - q) / (q * q)
    }
}

pub(crate) fn beta_at(d: &Distribution, p: f64, q: f64) -> Result<f64> {
    let upper = d.upper_share_at(p, q);
    if upper.is_nan() || upper <= 0.0 {
        return Err(Error::DegenerateTail { p });
    }
    Ok((q / upper).powi(2))
}

/// Weight `ν(p)` for the rank-only kinds; `ν*_Z` for Zenga.
pub(crate) fn rank_weight(kind: IndexKind, p: f64, q: f64) -> f64 {
    match kind {
        IndexKind::Gini => 2.0 * q,
        IndexKind::GiniK(k) => (k + 1.0) * q.powf(k),
        IndexKind::Bonferroni => {
            if p > 0.5 {
                -(-q).ln_1p()
            } else {
                -p.ln()
            }
        }
        IndexKind::Zenga => nu_star(p, q),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightVariant {
    Nu,
    NuStar,
    Beta,
}

impl fmt::Display for WeightVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightVariant::Nu => "nu",
            WeightVariant::NuStar => "nu_star",
            WeightVariant::Beta => "beta",
        })
    }
}

impl FromStr for WeightVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu" => Ok(WeightVariant::Nu),
            "nu_star" => Ok(WeightVariant::NuStar),
            "beta" => Ok(WeightVariant::Beta),
            other => Err(Error::InvalidParameter(format!(
                "unknown weight variant '{other}' (expected nu, nu_star, or beta)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightPoint {
    #[serde(serialize_with = "round15")]
    pub p: f64,
    #[serde(serialize_with = "round15")]
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    pub kind: IndexKind,
    pub variant: WeightVariant,
    pub points: Vec<WeightPoint>,
    /// `∫₀¹` of the weight function.
    #[serde(serialize_with = "round15")]
    pub integral: f64,
}

/// Tabulates a weight function on the open grid `i/(n+1)` and integrates it
/// over `(0, 1)`. The Zenga `nu` and `beta` variants need a distribution;
/// `nu_star` and `beta` exist only for Zenga.
pub fn weight_profile(
    kind: IndexKind,
    variant: WeightVariant,
    d: Option<&Distribution>,
    n_points: usize,
    cfg: &QuadConfig,
) -> Result<WeightProfile> {
    if n_points == 0 {
        return Err(Error::InvalidParameter(
            "weight grid needs at least one point".into(),
        ));
    }
    if variant != WeightVariant::Nu && kind != IndexKind::Zenga {
        return Err(Error::InvalidParameter(format!(
            "variant {variant} is only defined for the zenga kind"
        )));
    }
    if let IndexKind::GiniK(k) = kind {
        weight_gini_k(0.5, k)?;
    }
    let needs_dist = kind == IndexKind::Zenga && variant != WeightVariant::NuStar;
    let dist = match (needs_dist, d) {
        (true, None) => {
            return Err(Error::InvalidParameter(format!(
                "zenga {variant} depends on the income distribution; supply one"
            )))
        }
        (true, Some(d)) => Some(d),
        (false, _) => None,
    };

    let eval = |p: f64, q: f64| -> Result<f64> {
        match (variant, dist) {
            (WeightVariant::Beta, Some(d)) => beta_at(d, p, q),
            (WeightVariant::Nu, Some(d)) => Ok(nu_star(p, q) * beta_at(d, p, q)?),
            _ => Ok(rank_weight(kind, p, q)),
        }
    };

    let points = open_grid(n_points)
        .into_iter()
        .map(|p| eval(p, 1.0 - p).map(|weight| WeightPoint { p, weight }))
        .collect::<Result<Vec<_>>>()?;

    let integrand = Complemented(|p: f64, q: f64| eval(p, q).unwrap_or(f64::NAN));
    let integral = match dist {
        Some(d) => integrate_piecewise(&integrand, &d.breakpoints(), cfg)?.value,
        None => integrate_improper_at_zero(integrand, cfg)?.value,
    };

    Ok(WeightProfile {
        kind,
        variant,
        points,
        integral,
    })
}
