//! Inequality curves, indices, and the rank-dependent social welfare
//! functions they imply.
//!
//! A [`Distribution`] is either a weighted income sample or one of a few
//! parametric families with closed-form Lorenz curves. From it you can
//! evaluate curves ([`curves`]), summary indices ([`indices`]), welfare
//! values and weight functions ([`welfare`]), and compare two distributions
//! under the Lorenz and Zenga orderings ([`dominance`]).
//!
//! ```
//! use welfarelens::{indices, Distribution, QuadConfig};
//!
//! let d = Distribution::empirical(vec![1.0, 3.0]).unwrap();
//! let g = indices::gini(&d, &QuadConfig::default()).unwrap();
//! assert!((g - 0.25).abs() < 1e-15);
//! ```

pub mod curves;
pub mod distributions;
pub mod dominance;
pub mod error;
pub mod format;
pub mod indices;
pub mod quadrature;
pub mod welfare;

pub use crate::curves::{CurveGrid, CurveKind, CurvePoint};
pub use crate::distributions::{Distribution, EmpiricalSample, IngestError};
pub use crate::dominance::{DominanceVerdict, Relation};
pub use crate::error::{Error, Result};
pub use crate::indices::{IndexKind, IndexReport};
pub use crate::quadrature::QuadConfig;
pub use crate::welfare::{PropositionCertificate, WeightProfile, WeightVariant, WelfareKind};
