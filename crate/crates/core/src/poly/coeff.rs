//! Coefficient rings for [`BiPoly`](super::BiPoly).
//!
//! Two representations are supported: IEEE double complex numbers (the
//! default, used by every numeric routine) and exact Gaussian rationals, which
//! keep parsing and symbolic manipulation exact before the final conversion to
//! floating point.

use std::fmt;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Complex number with arbitrary-precision rational parts.
pub type GaussianRational = Complex<BigRational>;

/// Scalars that may appear as coefficients of a [`BiPoly`](super::BiPoly).
pub trait Coefficient:
    Num + Clone + PartialEq + fmt::Debug + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    /// Parses an unsigned real literal such as `3`, `0.25`, `1e-3` or `3/2`.
    fn from_literal(text: &str) -> Option<Self>;

    fn imaginary_unit() -> Self;

    fn conj(&self) -> Self;

    fn to_complex64(&self) -> Complex64;

    /// Modulus, rounded to `f64`.
    fn modulus(&self) -> f64 {
        self.to_complex64().norm()
    }

    /// Whether `self` and `other` agree to the given relative tolerance.
    /// Exact rings ignore the tolerance.
    fn close_to(&self, other: &Self, rel_tol: f64) -> bool;

    /// Writes the value as a literal the expression parser reads back exactly.
    fn fmt_literal(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    /// True when the value is a real number strictly below zero.
    fn is_negative_real(&self) -> bool;
}

impl Coefficient for Complex64 {
    fn from_literal(text: &str) -> Option<Self> {
        let value = match text.split_once('/') {
            Some((num, den)) => num.parse::<f64>().ok()? / den.parse::<f64>().ok()?,
            None => text.parse::<f64>().ok()?,
        };
        value.is_finite().then(|| Complex64::new(value, 0.0))
    }

    fn imaginary_unit() -> Self {
        Complex64::i()
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex64(&self) -> Complex64 {
        *self
    }

    fn close_to(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = self.norm().max(other.norm());
        (self - other).norm() <= rel_tol * scale
    }

    fn fmt_literal(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(
            f,
            self.re == 0.0,
            self.im == 0.0,
            self.im < 0.0,
            |f, which| {
                let x = if which { self.im.abs() } else { self.re };
                write_f64(f, x)
            },
        )
    }

    fn is_negative_real(&self) -> bool {
        self.im == 0.0 && self.re < 0.0
    }
}

impl Coefficient for GaussianRational {
    fn from_literal(text: &str) -> Option<Self> {
        let value = match text.split_once('/') {
            Some((num, den)) => {
                let den = parse_decimal(den)?;
                if den.is_zero() {
                    return None;
                }
                parse_decimal(num)? / den
            }
            None => parse_decimal(text)?,
        };
        Some(Complex::new(value, BigRational::zero()))
    }

    fn imaginary_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn close_to(&self, other: &Self, _rel_tol: f64) -> bool {
        self == other
    }

    fn fmt_literal(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(
            f,
            self.re.is_zero(),
            self.im.is_zero(),
            self.im.is_negative(),
            |f, which| {
                if which {
                    write!(f, "{}", self.im.abs())
                } else {
                    write!(f, "{}", self.re)
                }
            },
        )
    }

    fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

/// Shared layout for complex literals: `a`, `b*i`, `(a+b*i)`.
/// `part(f, false)` writes the real part, `part(f, true)` the imaginary modulus.
fn fmt_parts(
    f: &mut fmt::Formatter<'_>,
    re_zero: bool,
    im_zero: bool,
    im_negative: bool,
    part: impl Fn(&mut fmt::Formatter<'_>, bool) -> fmt::Result,
) -> fmt::Result {
    match (re_zero, im_zero) {
        (_, true) => part(f, false),
        (true, false) => {
            if im_negative {
                f.write_str("-")?;
            }
            part(f, true)?;
            f.write_str("*i")
        }
        (false, false) => {
            f.write_str("(")?;
            part(f, false)?;
            f.write_str(if im_negative { "-" } else { "+" })?;
            part(f, true)?;
            f.write_str("*i)")
        }
    }
}

/// Shortest representation that parses back to the same `f64`.
fn write_f64(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        write!(f, "{x}")
    } else {
        write!(f, "{x:?}")
    }
}

/// Exact decimal parse: `digits[.digits][e[+-]digits]`.
fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_are_exact() {
        let q = GaussianRational::from_literal("1.25e-1").unwrap();
        assert_eq!(q.re, BigRational::new(1.into(), 8.into()));
        let q = GaussianRational::from_literal("3/2").unwrap();
        assert_eq!(q.re, BigRational::new(3.into(), 2.into()));
        assert!(GaussianRational::from_literal("1/0").is_none());
        assert!(GaussianRational::from_literal(".").is_none());
    }

    #[test]
    fn float_literals() {
        assert_eq!(
            Complex64::from_literal("0.5"),
            Some(Complex64::new(0.5, 0.0))
        );
        assert_eq!(
            Complex64::from_literal("3/2"),
            Some(Complex64::new(1.5, 0.0))
        );
        assert_eq!(Complex64::from_literal("1e400"), None);
    }

    #[test]
    fn tolerance_is_relative() {
        let a = Complex64::new(1e9, 0.0);
        let b = Complex64::new(1e9 + 0.5, 0.0);
        assert!(a.close_to(&b, 1e-9));
        assert!(!Complex64::new(1.0, 0.0).close_to(&Complex64::new(1.0 + 1e-6, 0.0), 1e-9));
    }
}
