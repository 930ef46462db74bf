//! Independent checks: certifying that `f` and `g` have no common zero, and
//! an area-integral degree oracle that shares no code with the winding path.

mod area;
mod certify;

use num_complex::Complex64;
use thiserror::Error;

pub use area::degree_via_area_integral;
pub use certify::{
    certify_no_common_zeros, range_bound, Box2, Certificate, CertifyConfig, InconclusiveReason,
    RangeBound,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("could not certify absence of common zeros in {region} ({reason:?})")]
    Inconclusive {
        region: Box2,
        reason: InconclusiveReason,
    },
    #[error("certification radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("quadrature point {point} lies on a common near-zero of f and g")]
    GridPointSingular { point: Complex64 },
    #[error("quadrature grid must have at least 2 cells per side, got {0}")]
    InvalidGrid(usize),
}
