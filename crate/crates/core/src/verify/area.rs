use rayon::prelude::*;

use num_complex::Complex64;

use super::VerifyError;
use crate::function::ComplexFn;

const SINGULAR_TOL: f64 = 1e-9;
const MAX_RETRIES: usize = 3;

type Vec3 = [f64; 3];

/// Degree of `R = f / g` as the normalized pulled-back area of the sphere.
///
/// `R` is lifted to the unit sphere as
/// `(2 Re(f conj g), 2 Im(f conj g), |g|^2 - |f|^2) / (|f|^2 + |g|^2)`,
/// oriented so that the identity map has degree +1. The oriented area of the
/// image is integrated over `|z| <= 1` and, in the chart `z = 1/w`, over
/// `|w| <= 1`; their sum divided by `4 pi` is the degree. Uses midpoint
/// quadrature on a `grid x grid` lattice over `[-1, 1]^2` with central
/// differences of half the grid spacing.
///
/// The result is unrounded. If a sample point lands on a near common zero of
/// `f` and `g`, the sample points are shifted inside their cells and the
/// integral is retried, at most three times.
pub fn degree_via_area_integral<F, G>(f: &F, g: &G, grid: usize) -> Result<f64, VerifyError>
where
    F: ComplexFn + ?Sized,
    G: ComplexFn + ?Sized,
{
    if grid < 2 {
        return Err(VerifyError::InvalidGrid(grid));
    }
    let mut last = None;
    for attempt in 0..=MAX_RETRIES {
        let shift = 0.137 * attempt as f64;
        let near = chart_integral(&|z| (f.eval_at(z), g.eval_at(z)), grid, shift);
        let far = chart_integral(
            &|w: Complex64| {
                let z = w.inv();
                (f.eval_at(z), g.eval_at(z))
            },
            grid,
            shift,
        );
        match (near, far) {
            (Ok(a), Ok(b)) => return Ok((a + b) / (4.0 * std::f64::consts::PI)),
            (Err(e), _) | (_, Err(e)) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn chart_integral(
    pair: &(dyn Fn(Complex64) -> (Complex64, Complex64) + Sync),
    grid: usize,
    shift: f64,
) -> Result<f64, VerifyError> {
    let spacing = 2.0 / grid as f64;
    let h = 0.5 * spacing;
    let area = spacing * spacing;
    let lift = |z: Complex64| -> Result<Vec3, VerifyError> {
        let (a, b) = pair(z);
        let scale = a.norm().max(b.norm());
        if !scale.is_finite() || scale < SINGULAR_TOL {
            return Err(VerifyError::GridPointSingular { point: z });
        }
        let (a, b) = (a / scale, b / scale);
        let ab = a * b.conj();
        let (na, nb) = (a.norm_sqr(), b.norm_sqr());
        let n = na + nb;
        Ok([2.0 * ab.re / n, 2.0 * ab.im / n, (nb - na) / n])
    };

    let rows: Vec<Result<f64, VerifyError>> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let cy = -1.0 + (i as f64 + 0.5) * spacing;
            let mut sum = 0.0;
            for j in 0..grid {
                let cx = -1.0 + (j as f64 + 0.5) * spacing;
                if cx * cx + cy * cy > 1.0 {
                    continue;
                }
                // Sample point, possibly shifted off the cell center on retries.
                let x = cx + shift * h;
                let y = cy + 0.7 * shift * h;
                let phi = lift(Complex64::new(x, y))?;
                let px = sub(
                    lift(Complex64::new(x + h, y))?,
                    lift(Complex64::new(x - h, y))?,
                );
                let py = sub(
                    lift(Complex64::new(x, y + h))?,
                    lift(Complex64::new(x, y - h))?,
                );
                let jac = dot(phi, cross(px, py)) / (4.0 * h * h);
                sum += jac * area;
            }
            Ok(sum)
        })
        .collect();
    rows.into_iter().sum()
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
