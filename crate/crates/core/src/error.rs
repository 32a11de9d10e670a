use thiserror::Error;

use crate::distributions::IngestError;
use crate::quadrature::QuadError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} must lie in the open interval (0, 1), got {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infinite mean: pareto requires alpha > 1, got alpha = {alpha}")]
    InfiniteMean { alpha: f64 },
    #[error("degenerate tail at p = {p}: the upper group holds no income")]
    DegenerateTail { p: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Quadrature(_) | Error::DegenerateTail { .. })
    }
}

pub(crate) fn check_rank(what: &'static str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { what, value: p })
    }
}
