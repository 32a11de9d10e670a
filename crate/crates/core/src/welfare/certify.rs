//! Numerical certificates for the analytic properties of the Zenga weights.
//!
//! Each certificate reduces its property to a single worst-case residual and
//! passes iff the residual is strictly below its tolerance. A certificate
//! whose evaluation fails reports an infinite residual and the error text.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::open_grid;
use crate::distributions::Distribution;
use crate::error::Result;
use crate::format::round15;
use crate::indices::IndexKind;
use crate::quadrature::{integrate_improper_at_zero, Complemented, QuadConfig};

use super::weights::{beta_at, beta_zenga_at_one, nu_star};
use super::{welfare, welfare_by_curve, welfare_direct};

const SHAPE_GRID: usize = 10_000;
const PROBE_LO: f64 = 1e-8;
const PROBE_HI: f64 = 1.0 - 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PropositionId {
    #[serde(rename = "boundary_term_zero")]
    BoundaryTermZero,
    #[serde(rename = "nu_star_integrates_to_1")]
    NuStarIntegratesTo1,
    #[serde(rename = "nu_star_decreasing")]
    NuStarDecreasing,
    #[serde(rename = "nu_star_convex")]
    NuStarConvex,
    #[serde(rename = "limits")]
    Limits,
    #[serde(rename = "beta_decreasing")]
    BetaDecreasing,
    #[serde(rename = "nu_zenga_decreasing")]
    NuZengaDecreasing,
    #[serde(rename = "welfare_identity")]
    WelfareIdentity,
}

impl PropositionId {
    pub const ALL: [PropositionId; 8] = [
        PropositionId::BoundaryTermZero,
        PropositionId::NuStarIntegratesTo1,
        PropositionId::NuStarDecreasing,
        PropositionId::NuStarConvex,
        PropositionId::Limits,
        PropositionId::BetaDecreasing,
        PropositionId::NuZengaDecreasing,
        PropositionId::WelfareIdentity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PropositionId::BoundaryTermZero => "boundary_term_zero",
            PropositionId::NuStarIntegratesTo1 => "nu_star_integrates_to_1",
            PropositionId::NuStarDecreasing => "nu_star_decreasing",
            PropositionId::NuStarConvex => "nu_star_convex",
            PropositionId::Limits => "limits",
            PropositionId::BetaDecreasing => "beta_decreasing",
            PropositionId::NuZengaDecreasing => "nu_zenga_decreasing",
            PropositionId::WelfareIdentity => "welfare_identity",
        }
    }

    fn tolerance(&self) -> f64 {
        match self {
            PropositionId::BoundaryTermZero => 1e-6,
            PropositionId::NuStarIntegratesTo1 => 1e-8,
            PropositionId::NuStarDecreasing => 0.0,
            PropositionId::NuStarConvex => 1e-10,
            PropositionId::Limits => 1.0,
            PropositionId::BetaDecreasing => 1e-12,
            PropositionId::NuZengaDecreasing => 0.0,
            PropositionId::WelfareIdentity => 1e-8,
        }
    }

    fn description(&self) -> &'static str {
        match self {
            PropositionId::BoundaryTermZero => {
                "max |g(p)·L(p)/(1 − L(p))|, g(p) = ln p + 1 − p, at p = 1e-8 and 1 − 1e-8"
            }
            PropositionId::NuStarIntegratesTo1 => "|∫₀¹ ν*_Z dp − 1| by tanh-sinh quadrature",
            PropositionId::NuStarDecreasing => {
                "largest first difference of ν*_Z on a 10^4-point grid; must be negative"
            }
            PropositionId::NuStarConvex => {
                "worst violation among −Δ²ν*_Z on a 10^4-point grid, −(h(p) − 6 ln p), \
                 and −h(p) for p ≤ (−5+√33)/4, with h(p) = (2p³+3p²−6p+1)/p²"
            }
            PropositionId::Limits => {
                "worst normalized limit residual: ν*_Z(1−ε) − (1/2 + ε/3) over ε² at \
                 ε ∈ {1e-3, 1e-5}; ν*_Z(1−1e-6) ∈ [1/2, 1/2 + 1e-6]; ν*_Z, ν_Z at 1e-12 \
                 above 25; β_Z(1e-12) within 1e-6 of 1; ν_Z near 1 against its limit"
            }
            PropositionId::BetaDecreasing => {
                "largest first difference of β_Z on a 10^4-point grid, or excess of β_Z over 1"
            }
            PropositionId::NuZengaDecreasing => {
                "largest first difference of ν_Z on a 10^4-point grid; must be negative"
            }
            PropositionId::WelfareIdentity => {
                "max relative gap between ∫F⁻¹ν dp and μ(1 − I) over gini, gini_k(2), \
                 bonferroni, zenga; samples compare against the piecewise-linear embedding"
            }
        }
    }
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropositionCertificate {
    pub id: PropositionId,
    pub status: Status,
    #[serde(serialize_with = "round15")]
    pub residual: f64,
    #[serde(skip)]
    pub tolerance: f64,
    pub description: String,
}

impl PropositionCertificate {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs every certificate against `d`. Certificates are evaluated
/// concurrently and returned in [`PropositionId::ALL`] order.
pub fn certify(d: &Distribution, cfg: &QuadConfig) -> Vec<PropositionCertificate> {
    PropositionId::ALL
        .par_iter()
        .map(|&id| {
            let tolerance = id.tolerance();
            let (residual, description) = match residual(id, d, cfg) {
                Ok(r) => (r, id.description().to_string()),
                Err(e) => (
                    f64::INFINITY,
                    format!("{}; evaluation failed: {e}", id.description()),
                ),
            };
            let status = if residual < tolerance {
                Status::Pass
            } else {
                Status::Fail
            };
            PropositionCertificate {
                id,
                status,
                residual,
                tolerance,
                description,
            }
        })
        .collect()
}

fn residual(id: PropositionId, d: &Distribution, cfg: &QuadConfig) -> Result<f64> {
    match id {
        PropositionId::BoundaryTermZero => boundary_term(d),
        PropositionId::NuStarIntegratesTo1 => {
            let f = Complemented(nu_star);
            Ok((integrate_improper_at_zero(f, cfg)?.value - 1.0).abs())
        }
        PropositionId::NuStarDecreasing => {
            let values: Vec<f64> = open_grid(SHAPE_GRID)
                .iter()
                .map(|&p| nu_star(p, 1.0 - p))
                .collect();
            Ok(max_first_difference(&values))
        }
        PropositionId::NuStarConvex => Ok(convexity()),
        PropositionId::Limits => limits(d),
        PropositionId::BetaDecreasing => {
            let values = on_grid(|p, q| beta_at(d, p, q))?;
            let excess = values.iter().fold(f64::NEG_INFINITY, |m, b| m.max(b - 1.0));
            Ok(max_first_difference(&values).max(excess))
        }
        PropositionId::NuZengaDecreasing => {
            let values = on_grid(|p, q| Ok(nu_star(p, q) * beta_at(d, p, q)?))?;
            Ok(max_first_difference(&values))
        }
        PropositionId::WelfareIdentity => welfare_identity(d, cfg),
    }
}

fn on_grid(f: impl Fn(f64, f64) -> Result<f64>) -> Result<Vec<f64>> {
    open_grid(SHAPE_GRID)
        .iter()
        .map(|&p| f(p, 1.0 - p))
        .collect()
}

fn max_first_difference(values: &[f64]) -> f64 {
    values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max)
}

fn boundary_term(d: &Distribution) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in [PROBE_LO, PROBE_HI] {
        let q = 1.0 - p;
        let g = if p > 0.5 {
            (-q).ln_1p() + q
        } else {
            p.ln() + q
        };
        let upper = d.upper_share_at(p, q);
        if upper.is_nan() || upper <= 0.0 {
            return Err(crate::error::Error::DegenerateTail { p });
        }
        worst = worst.max((g * d.lorenz_at(p) / upper).abs());
    }
    Ok(worst)
}

fn convexity() -> f64 {
    let grid = open_grid(SHAPE_GRID);
    let values: Vec<f64> = grid.iter().map(|&p| nu_star(p, 1.0 - p)).collect();
    let second = values
        .windows(3)
        .map(|w| -(w[2] - 2.0 * w[1] + w[0]))
        .fold(f64::NEG_INFINITY, f64::max);

    let h = |p: f64| (2.0 * p.powi(3) + 3.0 * p * p - 6.0 * p + 1.0) / (p * p);
    let root = (33f64.sqrt() - 5.0) / 4.0;
    let sign = grid
        .iter()
        .map(|&p| {
            let hp = h(p);
            let shifted = -(hp - 6.0 * p.ln());
            if p <= root {
                shifted.max(-hp)
            } else {
                shifted
            }
        })
        .fold(f64::NEG_INFINITY, f64::max);
    second.max(sign)
}

fn limits(d: &Distribution) -> Result<f64> {
    let mut worst = 0.0f64;
    for eps in [1e-3, 1e-5] {
        let expected = 0.5 + eps / 3.0;
        worst = worst.max((nu_star(1.0 - eps, eps) - expected).abs() / (eps * eps));
    }

    let eps = 1e-6;
    let v = nu_star(1.0 - eps, eps);
    let centered = (v - (0.5 + eps / 2.0)).abs() / (eps / 2.0);
    worst = worst.max(centered);

    let tiny = 1e-12;
    let star_lo = nu_star(tiny, 1.0 - tiny);
    worst = worst.max(25.0 / star_lo);
    let beta_lo = beta_at(d, tiny, 1.0 - tiny)?;
    worst = worst.max(25.0 / (star_lo * beta_lo));
    worst = worst.max((beta_lo - 1.0).abs() / 1e-6);

    match d.upper_bound() {
        Some(_) => {
            // β_Z settles at (μ/x_max)² and ν*_Z at 1/2.
            let q = 1e-9;
            let nu = nu_star(1.0 - q, q) * beta_at(d, 1.0 - q, q)?;
            worst = worst.max((nu - beta_zenga_at_one(d) / 2.0).abs() / 1e-6);
        }
        None => {
            let q = 1e-12;
            let nu = nu_star(1.0 - q, q) * beta_at(d, 1.0 - q, q)?;
            worst = worst.max(nu / 1e-3);
        }
    }
    Ok(worst)
}

fn welfare_identity(d: &Distribution, cfg: &QuadConfig) -> Result<f64> {
    let kinds = [
        IndexKind::Gini,
        IndexKind::GiniK(2.0),
        IndexKind::Bonferroni,
        IndexKind::Zenga,
    ];
    let mut worst = 0.0f64;
    for kind in kinds {
        let direct = welfare_direct(d, kind, cfg)?;
        let mut targets = vec![welfare_by_curve(d, kind, cfg)?];
        if matches!(kind, IndexKind::Gini | IndexKind::GiniK(_)) || d.as_empirical().is_none() {
            targets.push(welfare(d, kind, cfg)?);
        }
        for target in targets {
            worst = worst.max((direct - target).abs() / target.abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(d: &Distribution) -> Vec<PropositionCertificate> {
        let certs = certify(d, &QuadConfig::default());
        for c in &certs {
            assert!(
                c.passed(),
                "{} failed: residual {} ({})",
                c.id,
                c.residual,
                c.description
            );
        }
        certs
    }

    #[test]
    fn degenerate_passes() {
        let certs = all_pass(&Distribution::degenerate(2.0).unwrap());
        assert_eq!(certs.len(), PropositionId::ALL.len());
    }

    #[test]
    fn parametric_families_pass() {
        all_pass(&Distribution::pareto(2.0, 1.0).unwrap());
        all_pass(&Distribution::lognormal(0.0, 1.0).unwrap());
        all_pass(&Distribution::exponential(1.0).unwrap());
        all_pass(&Distribution::uniform(0.0, 1.0).unwrap());
    }

    #[test]
    fn sample_passes() {
        all_pass(&Distribution::empirical(vec![1.0, 3.0, 4.5, 10.0]).unwrap());
    }

    #[test]
    fn order_is_fixed() {
        let certs = certify(
            &Distribution::degenerate(1.0).unwrap(),
            &QuadConfig::default(),
        );
        let ids: Vec<_> = certs.iter().map(|c| c.id).collect();
        assert_eq!(ids, PropositionId::ALL.to_vec());
    }

    #[test]
    fn serializes_four_fields() {
        let certs = certify(
            &Distribution::degenerate(1.0).unwrap(),
            &QuadConfig::default(),
        );
        let json = serde_json::to_value(&certs[1]).unwrap();
        let obj = json.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, ["description", "id", "residual", "status"]);
        assert_eq!(obj["id"], "nu_star_integrates_to_1");
        assert_eq!(obj["status"], "pass");
    }
}
