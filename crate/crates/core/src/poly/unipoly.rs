use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_traits::Zero;

/// Dense univariate complex polynomial; `coeffs[k]` multiplies `z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Complex64>,
}

impl UniPoly {
    /// Builds a polynomial, dropping trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `lead * prod (z - r)` over the given roots.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut p = UniPoly::new(vec![lead]);
        for &r in roots {
            p = &p * &UniPoly::new(vec![-r, Complex64::new(1.0, 0.0)]);
        }
        p
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the leading coefficient, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// `sum k |c_k|`, an upper bound for `|p'|` on the closed unit disk.
    pub fn derivative_bound_on_circle(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| k as f64 * c.norm())
            .sum()
    }

    /// `z^n p(1/z)` where `n` is the degree: the coefficient list reversed.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().copied().collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match k {
                0 => {}
                1 => f.write_str("*z")?,
                _ => write!(f, "*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_reports_degree() {
        let p = UniPoly::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UniPoly::from_real(&[0.0]).degree(), None);
    }

    #[test]
    fn from_roots_expands() {
        let one = Complex64::new(1.0, 0.0);
        let p = UniPoly::from_roots(one, &[one, -one]);
        assert_eq!(p, UniPoly::from_real(&[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn reversed_swaps_ends() {
        let p = UniPoly::from_real(&[1.0, 2.0, 3.0]);
        assert_eq!(p.reversed(), UniPoly::from_real(&[3.0, 2.0, 1.0]));
        assert_eq!(p.derivative_bound_on_circle(), 8.0);
    }
}
