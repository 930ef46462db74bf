//! Random instances for property tests and benchmarks.

use num_complex::Complex64;
use rand::Rng;

use crate::poly::{BiPoly, UniPoly};

/// Complex number with real and imaginary parts uniform in `[-bound, bound]`.
pub fn complex<R: Rng + ?Sized>(rng: &mut R, bound: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Complex number with integer parts in `[-bound, bound]`, never zero.
pub fn small_integer<R: Rng + ?Sized>(rng: &mut R, bound: i32) -> Complex64 {
    loop {
        let c = Complex64::new(
            rng.gen_range(-bound..=bound) as f64,
            rng.gen_range(-bound..=bound) as f64,
        );
        if c.norm() > 0.0 {
            return c;
        }
    }
}

/// Sparse polynomial in `z`, `conj(z)` of total degree exactly `degree`
/// with up to `extra_terms` lower-or-equal-degree terms besides a guaranteed
/// top-degree term. Coefficients come from `coeff`.
pub fn bipoly<R, F>(rng: &mut R, degree: u32, extra_terms: usize, mut coeff: F) -> BiPoly
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Complex64,
{
    let p = rng.gen_range(0..=degree);
    let mut terms = vec![((p, degree - p), coeff(rng))];
    for _ in 0..rng.gen_range(0..=extra_terms) {
        let total = rng.gen_range(0..=degree);
        let p = rng.gen_range(0..=total);
        terms.push(((p, total - p), coeff(rng)));
    }
    let poly = BiPoly::from_terms(terms);
    if poly.degree() == degree as i32 {
        poly
    } else {
        // A later term cancelled the top one; retry.
        bipoly(rng, degree, extra_terms, coeff)
    }
}

/// Dense univariate polynomial of exact degree with uniform coefficients.
pub fn unipoly<R: Rng + ?Sized>(rng: &mut R, degree: usize, bound: f64) -> UniPoly {
    let mut coeffs: Vec<Complex64> = (0..=degree).map(|_| complex(rng, bound)).collect();
    if coeffs[degree].norm() == 0.0 {
        coeffs[degree] = Complex64::new(1.0, 0.0);
    }
    UniPoly::new(coeffs)
}

/// Polynomial `lead * prod (z - r_k)` with root moduli uniform in
/// `[0, max_modulus]` and uniform arguments. Returns the roots too.
pub fn unipoly_from_roots<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    max_modulus: f64,
) -> (UniPoly, Vec<Complex64>) {
    unipoly_from_roots_in(rng, degree, 0.0, max_modulus)
}

/// As [`unipoly_from_roots`] with root moduli uniform in `[lo, hi]`.
pub fn unipoly_from_roots_in<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    lo: f64,
    hi: f64,
) -> (UniPoly, Vec<Complex64>) {
    let roots: Vec<Complex64> = (0..degree)
        .map(|_| {
            Complex64::from_polar(
                rng.gen_range(lo..=hi),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let lead = complex(rng, 2.0) + Complex64::new(0.1, 0.0);
    (UniPoly::from_roots(lead, &roots), roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bipoly_has_requested_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 0..7 {
            let p = bipoly(&mut rng, d, 4, |r| small_integer(r, 3));
            assert_eq!(p.degree(), d as i32);
        }
    }

    #[test]
    fn unipoly_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        assert_eq!(unipoly(&mut rng, 5, 1.0).degree(), Some(5));
        let (p, roots) = unipoly_from_roots(&mut rng, 4, 2.0);
        assert_eq!(p.degree(), Some(4));
        for r in roots {
            assert!(p.eval(r).norm() < 1e-9);
        }
    }
}
