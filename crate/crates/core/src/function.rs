use num_complex::Complex64;

use crate::poly::{BiPoly, Coefficient};

/// A complex function of one complex variable that can be sampled pointwise.
///
/// Implemented for polynomials and for any thread-safe closure, so the
/// numeric routines accept black-box functions as well as [`BiPoly`] values.
pub trait ComplexFn: Sync {
    fn eval_at(&self, z: Complex64) -> Complex64;
}

impl<C: Coefficient> ComplexFn for BiPoly<C> {
    fn eval_at(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }
}

impl<F> ComplexFn for F
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    fn eval_at(&self, z: Complex64) -> Complex64 {
        self(z)
    }
}
