use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

use super::coeff::Coefficient;
use super::unipoly::UniPoly;

/// Exponent pair `(p, q)` of the monomial `z^p conj(z)^q`.
pub type Bidegree = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiPolyError {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous (total degrees {low} and {high} both present)")]
    NotHomogeneous { low: u32, high: u32 },
}

/// Polynomial in the commuting formal variables `z` and `conj(z)`.
///
/// Stored sparsely; a coefficient that is exactly zero is never kept, so two
/// polynomials are equal iff their term maps are equal.
#[derive(Clone, PartialEq)]
pub struct BiPoly<C = Complex64> {
    terms: BTreeMap<Bidegree, C>,
}

impl<C: Coefficient> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: C, p: u32, q: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((p, q), c);
        }
        BiPoly { terms }
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    /// The variable `conj(z)`.
    pub fn zbar() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    /// Collects terms, summing repeated bidegrees and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Bidegree, C)>) -> Self {
        let mut out = Self::zero();
        for (key, c) in terms {
            out.add_term(key, c);
        }
        out
    }

    fn add_term(&mut self, key: Bidegree, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Bidegree, &C)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, p: u32, q: u32) -> Option<&C> {
        self.terms.get(&(p, q))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree `max(p + q)`; `-1` for the zero polynomial.
    pub fn degree(&self) -> i32 {
        self.terms
            .keys()
            .map(|&(p, q)| (p + q) as i32)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|&(p, q)| p + q);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, a)| (k, a.clone() * c.clone())))
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(C::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Pointwise conjugate: swaps the roles of `z` and `conj(z)`.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(p, q), c)| ((q, p), c.conj())))
    }

    /// `sum c_{p,q} w^p conj(w)^q`, evaluated in double precision.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        let wc = w.conj();
        self.terms
            .iter()
            .map(|(&(p, q), c)| c.to_complex64() * w.powu(p) * wc.powu(q))
            .sum()
    }

    /// Sum of the terms of maximal total degree.
    pub fn top_component(&self) -> Result<Self, BiPolyError> {
        self.component(self.degree())
            .ok_or(BiPolyError::ZeroPolynomial)
    }

    /// Terms of total degree exactly `d`, or `None` if there are none.
    pub fn component(&self, d: i32) -> Option<Self> {
        let terms: BTreeMap<_, _> = self
            .terms
            .iter()
            .filter(|(&(p, q), _)| (p + q) as i32 == d)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        (!terms.is_empty()).then_some(BiPoly { terms })
    }

    /// Drops every term of total degree `d`.
    pub fn without_component(&self, d: i32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(p, q), _)| (p + q) as i32 != d)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// For homogeneous `T` of degree `d`, the univariate `z^d T(z, 1/z)`,
    /// i.e. `sum_p c_{p,d-p} z^{2p}`.
    pub fn associated_poly(&self) -> Result<UniPoly, BiPolyError> {
        if self.is_zero() {
            return Err(BiPolyError::ZeroPolynomial);
        }
        if !self.is_homogeneous() {
            let low = self.terms.keys().map(|&(p, q)| p + q).min().unwrap_or(0);
            return Err(BiPolyError::NotHomogeneous {
                low,
                high: self.degree() as u32,
            });
        }
        let p_max = self.terms.keys().map(|&(p, _)| p).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * p_max + 1];
        for (&(p, _), c) in &self.terms {
            coeffs[2 * p as usize] = c.to_complex64();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// `(j, C_j)` with `C_j = sum_{p+q=j} |c_{p,q}|`, by decreasing `j`.
    ///
    /// On `|z| = r` the degree-`j` component is bounded by `C_j r^j`.
    pub fn homogeneous_coeff_norms(&self) -> Vec<(u32, f64)> {
        let mut norms: BTreeMap<u32, f64> = BTreeMap::new();
        for (&(p, q), c) in &self.terms {
            *norms.entry(p + q).or_default() += c.modulus();
        }
        norms.into_iter().rev().collect()
    }

    /// Bound on the real-Jacobian operator norm of the polynomial on the disk
    /// `|z| <= rho`: `sum (p+q) |c| rho^(p+q-1)`.
    pub fn lipschitz_bound(&self, rho: f64) -> f64 {
        self.terms
            .iter()
            .filter(|(&(p, q), _)| p + q > 0)
            .map(|(&(p, q), c)| (p + q) as f64 * c.modulus() * rho.powi((p + q - 1) as i32))
            .sum()
    }

    pub fn to_complex64(&self) -> BiPoly<Complex64> {
        BiPoly::from_terms(self.terms.iter().map(|(&k, c)| (k, c.to_complex64())))
    }
}

impl<C: Coefficient> Default for BiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Add for &BiPoly<C> {
    type Output = BiPoly<C>;

    fn add(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &BiPoly<C> {
    type Output = BiPoly<C>;

    fn sub(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Mul for &BiPoly<C> {
    type Output = BiPoly<C>;

    fn mul(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        let mut out = BiPoly::zero();
        for (&(p1, q1), a) in &self.terms {
            for (&(p2, q2), b) in &rhs.terms {
                out.add_term((p1 + p2, q1 + q2), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Neg for &BiPoly<C> {
    type Output = BiPoly<C>;

    fn neg(self) -> BiPoly<C> {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<C: Coefficient> $tr for BiPoly<C> {
            type Output = BiPoly<C>;
            fn $m(self, rhs: BiPoly<C>) -> BiPoly<C> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<C: Coefficient> Neg for BiPoly<C> {
    type Output = BiPoly<C>;

    fn neg(self) -> BiPoly<C> {
        -&self
    }
}

impl<C: fmt::Debug> fmt::Debug for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Canonical printer: terms by decreasing total degree, then decreasing power
/// of `z`. The output is valid input for [`crate::parser::parse`] and lowers
/// back to an identical polynomial.
impl<C: Coefficient> fmt::Display for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (n, key) in keys.into_iter().enumerate() {
            let term = format_term(key, &self.terms[&key]);
            match (n, term.strip_prefix('-')) {
                (0, _) => f.write_str(&term)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

fn format_term<C: Coefficient>((p, q): Bidegree, c: &C) -> String {
    let mut factors = Vec::new();
    match p {
        0 => {}
        1 => factors.push("z".to_string()),
        _ => factors.push(format!("z^{p}")),
    }
    match q {
        0 => {}
        1 => factors.push("conj(z)".to_string()),
        _ => factors.push(format!("conj(z)^{q}")),
    }
    let monomial = factors.join("*");
    let literal = Literal(c).to_string();
    if monomial.is_empty() {
        literal
    } else if *c == C::one() {
        monomial
    } else if *c == -C::one() {
        format!("-{monomial}")
    } else {
        format!("{literal}*{monomial}")
    }
}

struct Literal<'a, C>(&'a C);

impl<C: Coefficient> fmt::Display for Literal<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_literal(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn z() -> BiPoly {
        BiPoly::z()
    }

    fn zb() -> BiPoly {
        BiPoly::zbar()
    }

    fn k(x: f64) -> BiPoly {
        BiPoly::constant(c(x))
    }

    /// Term-by-term reference: the polynomial as an explicit list.
    fn poly(terms: &[(u32, u32, f64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().map(|&(p, q, x)| ((p, q), c(x))))
    }

    #[test]
    fn add_examples() {
        assert_eq!(&z() + &zb(), poly(&[(1, 0, 1.0), (0, 1, 1.0)]));
        let p = poly(&[(2, 1, 3.0), (0, 0, 1.0)]);
        assert_eq!(&p + &BiPoly::zero(), p);
        let zz = &z() * &zb();
        assert!((&zz + &(-&zz)).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&z() * &zb(), poly(&[(1, 1, 1.0)]));
        assert_eq!(
            &(&z() + &k(1.0)) * &(&z() - &k(1.0)),
            poly(&[(2, 0, 1.0), (0, 0, -1.0)])
        );
        let a = &(&z() * &zb()) + &k(1.0);
        let b = &(&z().pow(3) * &zb()) + &z();
        let expected = poly(&[(4, 2, 1.0), (2, 1, 1.0), (3, 1, 1.0), (1, 0, 1.0)]);
        assert_eq!(&a * &b, expected);
        assert_eq!((&a * &b).degree(), a.degree() + b.degree());
    }

    #[test]
    fn eval_examples() {
        let zz = &z() * &zb();
        assert!((zz.eval(Complex64::new(1.0, 1.0)) - c(2.0)).norm() < 1e-15);
        let g = poly(&[(3, 1, 1.0), (1, 0, 1.0)]);
        assert_eq!(g.eval(c(0.0)), c(0.0));
        let f = poly(&[(1, 4, 1.0), (1, 2, 1.0), (0, 0, 3.0)]);
        assert_eq!(f.eval(c(1.0)), c(5.0));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(BiPoly::<Complex64>::zero().degree(), -1);
        assert_eq!(k(2.0).degree(), 0);
        assert_eq!(
            BiPoly::<Complex64>::zero().top_component(),
            Err(BiPolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn top_components_of_worked_examples() {
        let f3 = poly(&[(1, 4, 1.0), (1, 2, 1.0), (0, 0, 3.0)]);
        assert_eq!(f3.top_component().unwrap(), poly(&[(1, 4, 1.0)]));
        let f4 = poly(&[(2, 3, 1.0), (4, 1, 2.0), (2, 0, 3.0), (0, 0, 2.0)]);
        assert_eq!(
            f4.top_component().unwrap(),
            poly(&[(2, 3, 1.0), (4, 1, 2.0)])
        );
        let f5 = poly(&[(3, 0, 1.0), (0, 3, 1.0), (1, 0, 1.0)]);
        assert_eq!(
            f5.top_component().unwrap(),
            poly(&[(3, 0, 1.0), (0, 3, 1.0)])
        );
    }

    #[test]
    fn associated_poly_examples() {
        assert_eq!(
            poly(&[(1, 4, 1.0)]).associated_poly().unwrap(),
            UniPoly::from_real(&[0.0, 0.0, 1.0])
        );
        let t4 = poly(&[(2, 3, 1.0), (4, 1, 2.0)]);
        let mut expected = vec![0.0; 9];
        expected[4] = 1.0;
        expected[8] = 2.0;
        assert_eq!(t4.associated_poly().unwrap(), UniPoly::from_real(&expected));
        let bm = Complex64::new(2.0, -1.0);
        let t2 = BiPoly::monomial(bm, 0, 3);
        assert_eq!(t2.associated_poly().unwrap(), UniPoly::new(vec![bm]));
        assert_eq!(
            poly(&[(1, 0, 1.0), (0, 0, 1.0)]).associated_poly(),
            Err(BiPolyError::NotHomogeneous { low: 0, high: 1 })
        );
    }

    #[test]
    fn coeff_norm_examples() {
        let f3 = poly(&[(1, 4, 1.0), (1, 2, 1.0), (0, 0, 3.0)]);
        assert_eq!(
            f3.homogeneous_coeff_norms(),
            vec![(5, 1.0), (3, 1.0), (0, 3.0)]
        );
        assert!(BiPoly::<Complex64>::zero()
            .homogeneous_coeff_norms()
            .is_empty());
        let t = poly(&[(4, 1, 2.0), (2, 3, 1.0)]);
        assert_eq!(t.homogeneous_coeff_norms(), vec![(5, 3.0)]);
    }

    #[test]
    fn conj_swaps_bidegrees() {
        let p = BiPoly::from_terms([((2, 0), Complex64::new(0.0, 1.0))]);
        assert_eq!(p.conj(), BiPoly::monomial(Complex64::new(0.0, -1.0), 0, 2));
    }

    #[test]
    fn printer_output() {
        let f = poly(&[(1, 4, 1.0), (1, 2, 1.0), (0, 0, 3.0)]);
        assert_eq!(f.to_string(), "z*conj(z)^4 + z*conj(z)^2 + 3");
        let g = BiPoly::from_terms([
            ((2, 0), Complex64::new(1.5, -2.0)),
            ((0, 1), c(-1.0)),
            ((0, 0), Complex64::new(0.0, -0.25)),
        ]);
        assert_eq!(g.to_string(), "(1.5-2*i)*z^2 - conj(z) - 0.25*i");
        assert_eq!(BiPoly::<Complex64>::zero().to_string(), "0");
    }
}
