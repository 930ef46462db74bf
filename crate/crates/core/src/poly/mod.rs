//! Polynomials in `z` and `conj(z)`, and dense univariate polynomials.

mod bipoly;
mod coeff;
mod unipoly;

pub use bipoly::{BiPoly, BiPolyError, Bidegree};
pub use coeff::{Coefficient, GaussianRational};
pub use unipoly::UniPoly;
