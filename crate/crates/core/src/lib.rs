//! Topological degree of continuous self-maps of the Riemann sphere.
//!
//! A map is given as a quotient `R = f / g` of two complex functions without
//! common zeros, with `R = inf` wherever `g` vanishes and at `z = inf`. The
//! degree is computed as the winding number of `phi -> f(M e^{i phi})` for a
//! radius `M` beyond which `f` does not vanish. For polynomials in `z` and
//! `conj(z)` a symbolic fast path reduces the problem to counting roots of a
//! univariate polynomial inside the unit disk.

pub mod degree;
pub mod disk_roots;
pub mod function;
pub mod generate;
pub mod parser;
pub mod poly;
pub mod verify;
pub mod winding;

pub use num_complex::Complex64;

pub use degree::{
    degree_of, DegreeError, DegreeOptions, DegreeReport, MapFn, MapSpec, Method, MethodPreference,
};
pub use function::ComplexFn;
pub use poly::{BiPoly, Coefficient, GaussianRational, UniPoly};
