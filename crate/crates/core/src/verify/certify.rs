use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use super::VerifyError;
use crate::poly::{BiPoly, Coefficient};

/// Closed axis-aligned rectangle in the `(Re z, Im z)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box2 {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Box2 {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Self {
        debug_assert!(x_lo <= x_hi && y_lo <= y_hi);
        Box2 {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        }
    }

    /// Square `[-r, r]^2` around the origin.
    pub fn centered_square(r: f64) -> Self {
        Self::new(-r, r, -r, r)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x_lo + self.x_hi), 0.5 * (self.y_lo + self.y_hi))
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn height(&self) -> f64 {
        self.y_hi - self.y_lo
    }

    pub fn half_diagonal(&self) -> f64 {
        0.5 * self.width().hypot(self.height())
    }

    /// Largest `|z|` over the box (attained at a corner).
    pub fn max_modulus(&self) -> f64 {
        let x = self.x_lo.abs().max(self.x_hi.abs());
        let y = self.y_lo.abs().max(self.y_hi.abs());
        x.hypot(y)
    }

    /// Smallest `|z|` over the box.
    pub fn min_modulus(&self) -> f64 {
        let dx = if self.x_lo > 0.0 {
            self.x_lo
        } else if self.x_hi < 0.0 {
            -self.x_hi
        } else {
            0.0
        };
        let dy = if self.y_lo > 0.0 {
            self.y_lo
        } else if self.y_hi < 0.0 {
            -self.y_hi
        } else {
            0.0
        };
        dx.hypot(dy)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.x_lo..=self.x_hi).contains(&z.re) && (self.y_lo..=self.y_hi).contains(&z.im)
    }

    /// The four quadrants, in the order SW, SE, NW, NE.
    pub fn quadrants(&self) -> [Box2; 4] {
        let c = self.center();
        [
            Box2::new(self.x_lo, c.re, self.y_lo, c.im),
            Box2::new(c.re, self.x_hi, self.y_lo, c.im),
            Box2::new(self.x_lo, c.re, c.im, self.y_hi),
            Box2::new(c.re, self.x_hi, c.im, self.y_hi),
        ]
    }
}

impl fmt::Display for Box2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] x [{}, {}]",
            self.x_lo, self.x_hi, self.y_lo, self.y_hi
        )
    }
}

/// Lower bound for `min over a box of max(|f|, |g|)`. A positive value
/// certifies that `f` and `g` have no common zero in the box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeBound {
    pub lower: f64,
}

/// Centered-form enclosure: `|p(z)| >= |p(m)| - Lip_p(box) * r` for the box
/// center `m` and half-diagonal `r`.
pub fn range_bound(f: &BiPoly, g: &BiPoly, bx: &Box2) -> RangeBound {
    let m = bx.center();
    let r = bx.half_diagonal();
    let rho = bx.max_modulus();
    let lf = f.eval(m).norm() - f.lipschitz_bound(rho) * r;
    let lg = g.eval(m).norm() - g.lipschitz_bound(rho) * r;
    RangeBound {
        lower: lf.max(lg).max(0.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyConfig {
    /// Boxes narrower than this are not split further.
    pub min_box_size: f64,
    /// Upper limit on the number of boxes examined.
    pub max_boxes: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            min_box_size: 1e-6,
            max_boxes: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InconclusiveReason {
    /// A box reached the minimum size without being certified: a common zero
    /// of `f` and `g` may lie in it.
    MinBoxSize,
    /// The box budget ran out first.
    BoxBudget,
}

/// Statistics of a successful certification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub boxes_examined: usize,
    pub depth: u32,
    /// Smallest positive [`RangeBound`] among the certified boxes.
    pub min_lower_bound: f64,
}

/// Certifies that `f` and `g` share no zero in the closed disk `|z| <= radius`
/// by subdividing `[-radius, radius]^2`.
///
/// Boxes are processed level by level in a fixed order, so the reported
/// region of an inconclusive run is reproducible.
pub fn certify_no_common_zeros<C: Coefficient>(
    f: &BiPoly<C>,
    g: &BiPoly<C>,
    radius: f64,
    config: &CertifyConfig,
) -> Result<Certificate, VerifyError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(VerifyError::InvalidRadius(radius));
    }
    let f = f.to_complex64();
    let g = g.to_complex64();
    let mut level = vec![Box2::centered_square(radius)];
    let mut examined = 0usize;
    let mut depth = 0u32;
    let mut min_lower = f64::INFINITY;

    while !level.is_empty() {
        if examined + level.len() > config.max_boxes {
            return Err(VerifyError::Inconclusive {
                region: level[0],
                reason: InconclusiveReason::BoxBudget,
            });
        }
        examined += level.len();
        let bounds: Vec<Option<f64>> = level
            .par_iter()
            .map(|bx| (bx.min_modulus() <= radius).then(|| range_bound(&f, &g, bx).lower))
            .collect();

        let mut next = Vec::new();
        for (bx, bound) in level.iter().zip(bounds) {
            match bound {
                None => {}
                Some(b) if b > 0.0 => min_lower = min_lower.min(b),
                Some(_) => {
                    if bx.width() <= config.min_box_size {
                        return Err(VerifyError::Inconclusive {
                            region: *bx,
                            reason: InconclusiveReason::MinBoxSize,
                        });
                    }
                    next.extend(bx.quadrants());
                }
            }
        }
        if !next.is_empty() {
            depth += 1;
        }
        level = next;
    }
    Ok(Certificate {
        boxes_examined: examined,
        depth,
        min_lower_bound: min_lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn p(s: &str) -> BiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn box_geometry() {
        let b = Box2::new(1.0, 2.0, -1.0, 3.0);
        assert_eq!(b.min_modulus(), 1.0);
        assert_eq!(b.max_modulus(), 2.0_f64.hypot(3.0));
        assert_eq!(Box2::centered_square(1.0).min_modulus(), 0.0);
        let q = b.quadrants();
        assert_eq!(q[3], Box2::new(1.5, 2.0, 1.0, 3.0));
        assert!(b.contains(Complex64::new(1.5, 0.0)));
    }

    #[test]
    fn range_bound_is_a_lower_bound() {
        let f = p("z^2*conj(z) - 3*z + 1");
        let g = p("conj(z)^2 + i");
        let bx = Box2::new(0.2, 0.5, -0.3, 0.1);
        let lb = range_bound(&f, &g, &bx).lower;
        for i in 0..=20 {
            for j in 0..=20 {
                let z = Complex64::new(0.2 + 0.3 * i as f64 / 20.0, -0.3 + 0.4 * j as f64 / 20.0);
                assert!(f.eval(z).norm().max(g.eval(z).norm()) >= lb);
            }
        }
    }

    #[test]
    fn worked_examples_certify() {
        let f = p("z*conj(z)^4 + z*conj(z)^2 + 3");
        let g = p("z^3*conj(z) + z");
        assert!(certify_no_common_zeros(&f, &g, 2.0, &CertifyConfig::default()).is_ok());

        let f = p("z^2*conj(z)^3 + 2*z^4*conj(z) + 3*z^2 + 2");
        let g = p("3*z^3 + conj(z)");
        assert!(certify_no_common_zeros(&f, &g, 1.0, &CertifyConfig::default()).is_ok());
        assert!(certify_no_common_zeros(&f, &g, 2.0, &CertifyConfig::default()).is_ok());
    }

    #[test]
    fn genuine_common_zero_is_inconclusive() {
        let f = p("z - 1");
        let g = p("conj(z) - 1");
        match certify_no_common_zeros(&f, &g, 1.5, &CertifyConfig::default()) {
            Err(VerifyError::Inconclusive { region, reason }) => {
                assert_eq!(reason, InconclusiveReason::MinBoxSize);
                assert!((region.center() - Complex64::new(1.0, 0.0)).norm() < 1e-5);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_distinguished() {
        let f = p("z - 1");
        let g = p("conj(z) - 1");
        let cfg = CertifyConfig {
            max_boxes: 50,
            ..Default::default()
        };
        assert!(matches!(
            certify_no_common_zeros(&f, &g, 1.5, &cfg),
            Err(VerifyError::Inconclusive {
                reason: InconclusiveReason::BoxBudget,
                ..
            })
        ));
    }
}
