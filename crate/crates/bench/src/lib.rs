//! Fixtures shared by the benchmarks.

use s2degree::parser::parse_poly;
use s2degree::{BiPoly, Complex64, UniPoly};

pub struct Fixture {
    pub name: &'static str,
    pub f: BiPoly,
    pub g: BiPoly,
    pub radius: Option<f64>,
}

/// The five worked maps, with their expected degrees.
pub fn worked_examples() -> Vec<(Fixture, i64)> {
    let fx = |name, f: &str, g: &str, radius| Fixture {
        name,
        f: parse_poly(f).expect("fixture parses"),
        g: parse_poly(g).expect("fixture parses"),
        radius,
    };
    vec![
        (fx("holomorphic", "z^2+1", "z", None), 2),
        (fx("anti_holomorphic", "1", "conj(z)^2", None), -2),
        (
            fx(
                "mixed_minus_3",
                "z*conj(z)^4+z*conj(z)^2+3",
                "z^3*conj(z)+z",
                None,
            ),
            -3,
        ),
        (
            fx(
                "mixed_plus_3",
                "z^2*conj(z)^3+2*z^4*conj(z)+3*z^2+2",
                "3*z^3+conj(z)",
                None,
            ),
            3,
        ),
        (
            fx("winding_on_unit_circle", "z^3+conj(z)^3+z", "1", Some(1.0)),
            1,
        ),
    ]
}

/// `z^a conj(z)^b + 2 z^(a+b) + z conj(z) + 1` over `z^2 + 1`: degree grows
/// with `a + b` and the top component has `a + b + 1` terms at most.
pub fn scaled_map(a: u32, b: u32) -> Fixture {
    let f = BiPoly::from_terms([
        ((a, b), Complex64::new(1.0, 0.0)),
        ((a + b, 0), Complex64::new(2.0, 0.0)),
        ((1, 1), Complex64::new(1.0, 0.0)),
        ((0, 0), Complex64::new(1.0, 0.0)),
    ]);
    Fixture {
        name: "scaled",
        f,
        g: parse_poly("z^2 + 1").expect("fixture parses"),
        radius: None,
    }
}

/// Polynomial with `n` roots alternating between radii 0.5 and 1.5.
pub fn spread_roots(n: usize) -> UniPoly {
    let roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let r = if k % 2 == 0 { 0.5 } else { 1.5 };
            Complex64::from_polar(r, 0.3 + k as f64 * std::f64::consts::TAU / n as f64)
        })
        .collect();
    UniPoly::from_roots(Complex64::new(1.0, 0.0), &roots)
}
