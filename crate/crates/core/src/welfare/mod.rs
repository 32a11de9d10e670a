//! Rank-dependent social welfare functions.
//!
//! Every kind has the form `W = ∫₀¹ F⁻¹(p)·ν(p) dp = μ(1 − I)` for its
//! index `I`. [`welfare`] evaluates the right-hand side from the index;
//! [`welfare_direct`] integrates the weighted quantile function. For the
//! Zenga kind the direct form follows from integrating `μ∫U(p)dp` by parts
//! with `g(p) = ln p + 1 − p`; the boundary term `g·L/(1 − L)` vanishes at
//! both ends, leaving `ν_Z(p) = (−ln p + p − 1)/(1 − L(p))²` with no extra
//! factor of `μ`.

mod certify;
mod weights;

pub use self::certify::{certify, PropositionCertificate, PropositionId, Status};
pub use self::weights::{
    beta_zenga, beta_zenga_at_one, weight_bonferroni, weight_gini, weight_gini_k, weight_profile,
    weight_zenga, weight_zenga_star, WeightPoint, WeightProfile, WeightVariant,
};

use crate::distributions::Distribution;
use crate::error::Result;
use crate::indices::{index, index_by_curve, IndexKind};
use crate::quadrature::{integrate_piecewise, Complemented, QuadConfig};

use self::weights::{beta_at, rank_weight};

pub type WelfareKind = IndexKind;

/// `μ(1 − I)` with the distribution's standard index estimator.
pub fn welfare(d: &Distribution, kind: WelfareKind, cfg: &QuadConfig) -> Result<f64> {
    Ok(d.mean() * (1.0 - index(d, kind, cfg)?))
}

/// `μ(1 − I)` with the index integrated from its defining curve; for
/// samples this is the piecewise-linear Lorenz embedding.
pub fn welfare_by_curve(d: &Distribution, kind: WelfareKind, cfg: &QuadConfig) -> Result<f64> {
    Ok(d.mean() * (1.0 - index_by_curve(d, kind, cfg)?))
}

/// `∫₀¹ F⁻¹(p)·ν(p) dp`. Samples use the step quantile, and for Zenga the
/// piecewise-linear Lorenz curve inside `ν_Z`, integrating cell by cell.
pub fn welfare_direct(d: &Distribution, kind: WelfareKind, cfg: &QuadConfig) -> Result<f64> {
    let breaks = d.breakpoints();
    let value = match kind {
        IndexKind::Zenga => {
            let f = Complemented(|p: f64, q: f64| match beta_at(d, p, q) {
                Ok(beta) => d.quantile_at(p, q) * rank_weight(kind, p, q) * beta,
                Err(_) => f64::NAN,
            });
            integrate_piecewise(&f, &breaks, cfg)?.value
        }
        _ => {
            let f = Complemented(|p: f64, q: f64| d.quantile_at(p, q) * rank_weight(kind, p, q));
            integrate_piecewise(&f, &breaks, cfg)?.value
        }
    };
    Ok(value)
}
