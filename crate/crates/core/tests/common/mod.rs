#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;

use s2degree::degree::dominance_radius;
use s2degree::disk_roots::RootCountConfig;
use s2degree::generate;
use s2degree::verify::{certify_no_common_zeros, CertifyConfig};
use s2degree::{BiPoly, Complex64};

pub fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * (1.0 + a.norm().max(b.norm()))
}

/// Sparse polynomial of total degree at most `max_degree`.
pub fn bipoly(max_degree: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(
        (0..=max_degree, 0..=max_degree, -3.0..3.0f64, -3.0..3.0f64),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        BiPoly::from_terms(
            terms
                .into_iter()
                .filter(|t| t.0 + t.1 <= max_degree)
                .map(|(p, q, re, im)| ((p, q), Complex64::new(re, im))),
        )
    })
}

pub fn unit_point() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| Complex64::new(x, y))
}

/// Pair of unequal degree with no common zero, certified, and a leading
/// component without zeros on the unit circle.
pub fn certified_pair<R: Rng>(rng: &mut R, max_degree: u32) -> (BiPoly, BiPoly) {
    let config = RootCountConfig::default();
    loop {
        let (df, dg) = (rng.gen_range(0..=max_degree), rng.gen_range(0..=max_degree));
        if df == dg {
            continue;
        }
        let f = generate::bipoly(rng, df, 3, |r| generate::small_integer(r, 3));
        let g = generate::bipoly(rng, dg, 3, |r| generate::small_integer(r, 3));
        let radii: Vec<f64> = [&f, &g]
            .iter()
            .filter_map(|p| dominance_radius(p, &p.top_component().ok()?, &config).ok())
            .collect();
        let lead = if df > dg { &f } else { &g };
        if dominance_radius(lead, &lead.top_component().unwrap(), &config).is_err() {
            continue;
        }
        let radius = radii.into_iter().fold(f64::INFINITY, f64::min);
        if certify_no_common_zeros(&f, &g, radius, &CertifyConfig::default()).is_ok() {
            return (f, g);
        }
    }
}
