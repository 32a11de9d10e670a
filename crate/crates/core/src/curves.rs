//! Lorenz, generalized Lorenz, Bonferroni, and Zenga curves.
//!
//! The Zenga uniformity ratio is the mean of the units below rank `p`
//! divided by the mean of those above it,
//!
//! ```text
//! U(p) = M⁻(p) / M⁺(p) = [L(p) / (1 − L(p))] · [(1 − p) / p],
//! ```
//!
//! and the Zenga inequality curve is `1 − U(p)`. Inverting the ratio gives
//! back the Lorenz curve as `L(p) = p·U / (1 − p + p·U)`; written in terms
//! of the inequality curve `Z = 1 − U` this is `L = 1 − (1 − p)/(1 − p·Z)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::Distribution;
use crate::error::{check_rank, Error, Result};
use crate::format::round15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Lorenz,
    GeneralizedLorenz,
    BonferroniCurve,
    UniformityRatio,
    ZengaInequality,
}

impl CurveKind {
    pub const ALL: [CurveKind; 5] = [
        CurveKind::Lorenz,
        CurveKind::GeneralizedLorenz,
        CurveKind::BonferroniCurve,
        CurveKind::UniformityRatio,
        CurveKind::ZengaInequality,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CurveKind::Lorenz => "lorenz",
            CurveKind::GeneralizedLorenz => "generalized_lorenz",
            CurveKind::BonferroniCurve => "bonferroni_curve",
            CurveKind::UniformityRatio => "uniformity_ratio",
            CurveKind::ZengaInequality => "zenga_inequality",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CurveKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown curve '{s}' (expected one of lorenz, generalized_lorenz, \
                     bonferroni_curve, uniformity_ratio, zenga_inequality)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    #[serde(serialize_with = "round15")]
    pub p: f64,
    #[serde(serialize_with = "round15")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveGrid {
    pub kind: CurveKind,
    pub points: Vec<CurvePoint>,
}

pub fn lorenz(d: &Distribution, p: f64) -> Result<f64> {
    check_rank("p", p)?;
    Ok(d.lorenz_at(p))
}

/// `μ·L(p)`.
pub fn generalized_lorenz(d: &Distribution, p: f64) -> Result<f64> {
    Ok(d.mean() * lorenz(d, p)?)
}

/// `L(p)/p`, the mean of the poorest fraction `p` relative to the overall mean.
pub fn bonferroni_curve(d: &Distribution, p: f64) -> Result<f64> {
    Ok(lorenz(d, p)? / p)
}

pub(crate) fn uniformity_at(d: &Distribution, p: f64, q: f64) -> Result<f64> {
    let upper = d.upper_share_at(p, q);
    if upper.is_nan() || upper <= 0.0 {
        return Err(Error::DegenerateTail { p });
    }
    Ok((d.lorenz_at(p) / p) * (q / upper))
}

pub fn uniformity_ratio(d: &Distribution, p: f64) -> Result<f64> {
    check_rank("p", p)?;
    uniformity_at(d, p, 1.0 - p)
}

pub fn zenga_inequality_curve(d: &Distribution, p: f64) -> Result<f64> {
    Ok(1.0 - uniformity_ratio(d, p)?)
}

pub fn evaluate(d: &Distribution, kind: CurveKind, p: f64) -> Result<f64> {
    match kind {
        CurveKind::Lorenz => lorenz(d, p),
        CurveKind::GeneralizedLorenz => generalized_lorenz(d, p),
        CurveKind::BonferroniCurve => bonferroni_curve(d, p),
        CurveKind::UniformityRatio => uniformity_ratio(d, p),
        CurveKind::ZengaInequality => zenga_inequality_curve(d, p),
    }
}

/// Open uniform grid `p_i = i/(n+1)`, `i = 1..=n`.
pub fn open_grid(n_points: usize) -> Vec<f64> {
    let denom = (n_points + 1) as f64;
    (1..=n_points).map(|i| i as f64 / denom).collect()
}

/// Evaluates `kind` on the open uniform grid with `n_points` interior points.
/// Points are evaluated in parallel; the result is identical to a sequential
/// evaluation.
pub fn curve_grid(d: &Distribution, kind: CurveKind, n_points: usize) -> Result<CurveGrid> {
    if n_points == 0 {
        return Err(Error::InvalidParameter(
            "curve grid needs at least one point".into(),
        ));
    }
    let points = open_grid(n_points)
        .into_par_iter()
        .map(|p| evaluate(d, kind, p).map(|value| CurvePoint { p, value }))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveGrid { kind, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> Distribution {
        Distribution::empirical(vec![1.0, 3.0]).unwrap()
    }

    #[test]
    fn lorenz_examples() {
        let deg = Distribution::degenerate(4.0).unwrap();
        assert_eq!(lorenz(&deg, 0.5).unwrap(), 0.5);
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        assert!((lorenz(&u, 0.5).unwrap() - 0.25).abs() < 1e-15);
        let par = Distribution::pareto(2.0, 1.0).unwrap();
        assert!((lorenz(&par, 0.75).unwrap() - 0.5).abs() < 1e-15);
        assert!(lorenz(&u, 1.0).is_err());
    }

    #[test]
    fn uniformity_examples() {
        let deg = Distribution::degenerate(4.0).unwrap();
        for p in [0.1, 0.5, 0.9] {
            assert!((uniformity_ratio(&deg, p).unwrap() - 1.0).abs() < 1e-15);
            assert!(zenga_inequality_curve(&deg, p).unwrap().abs() < 1e-15);
        }
        let third = 1.0 / 3.0;
        assert!((uniformity_ratio(&two_point(), 0.5).unwrap() - third).abs() < 1e-15);
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        assert!((uniformity_ratio(&u, 0.5).unwrap() - third).abs() < 1e-15);
        assert!((zenga_inequality_curve(&u, 0.5).unwrap() - 2.0 * third).abs() < 1e-15);
        assert!((zenga_inequality_curve(&two_point(), 0.5).unwrap() - 2.0 * third).abs() < 1e-15);
    }

    #[test]
    fn uniformity_is_ratio_of_group_means() {
        let d = Distribution::empirical(vec![0.5, 1.0, 2.0, 7.0]).unwrap();
        let cfg = crate::quadrature::QuadConfig::default();
        for p in [0.1, 0.3, 0.6, 0.95] {
            let lower_mean = d.mean() * d.lorenz_at(p) / p;
            let upper_mean = d.upper_mean(p, &cfg).unwrap();
            let u = uniformity_ratio(&d, p).unwrap();
            assert!((u - lower_mean / upper_mean).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_tail_is_reported() {
        let d = Distribution::empirical(vec![0.0, 0.0, 1.0]).unwrap();
        assert!(uniformity_ratio(&d, 0.999_999).is_ok());
        // q = 0 leaves no upper group.
        let err = uniformity_at(&d, 1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateTail { .. }));
    }

    #[test]
    fn grid_examples() {
        let deg = Distribution::degenerate(2.0).unwrap();
        let g = curve_grid(&deg, CurveKind::Lorenz, 3).unwrap();
        let expected = [(0.25, 0.25), (0.5, 0.5), (0.75, 0.75)];
        for (pt, (p, v)) in g.points.iter().zip(expected) {
            assert_eq!((pt.p, pt.value), (p, v));
        }
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let g = curve_grid(&u, CurveKind::Lorenz, 1).unwrap();
        assert_eq!(g.points.len(), 1);
        assert_eq!(g.points[0].p, 0.5);
        assert!((g.points[0].value - 0.25).abs() < 1e-15);
        let g = curve_grid(&two_point(), CurveKind::UniformityRatio, 1).unwrap();
        assert!((g.points[0].value - 1.0 / 3.0).abs() < 1e-15);
        assert!(curve_grid(&u, CurveKind::Lorenz, 0).is_err());
    }

    #[test]
    fn parallel_grid_is_bit_identical() {
        let d = Distribution::lognormal(0.2, 1.3).unwrap();
        for kind in CurveKind::ALL {
            let g = curve_grid(&d, kind, 257).unwrap();
            for pt in &g.points {
                assert_eq!(
                    pt.value.to_bits(),
                    evaluate(&d, kind, pt.p).unwrap().to_bits()
                );
            }
        }
    }

    #[test]
    fn kind_parsing() {
        for k in CurveKind::ALL {
            assert_eq!(k.as_str().parse::<CurveKind>().unwrap(), k);
        }
        assert!("gini".parse::<CurveKind>().is_err());
    }
}
