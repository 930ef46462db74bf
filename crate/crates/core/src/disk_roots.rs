//! Roots of univariate polynomials relative to the unit circle.
//!
//! [`count_roots_in_disk`] is the argument principle: the winding number of
//! `alpha -> p(e^{i alpha})` equals the number of roots in the open unit disk,
//! counted with multiplicity, provided no root lies on the circle. That
//! proviso is checked first with a Lipschitz lower bound on `|p|` over the
//! circle. [`find_all_roots`] is an independent Durand-Kerner solver used as
//! an oracle.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::UniPoly;
use crate::winding::{SampledLoop, WindingConfig, WindingError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no well-defined root count")]
    ZeroPolynomial,
    #[error("root finding needs degree at least 1")]
    ConstantPolynomial,
    #[error("a root lies on or numerically on the unit circle near angle {angle} (certified bound {bound:e})")]
    RootOnCircle { angle: f64, bound: f64 },
    #[error("Durand-Kerner iteration did not converge in {iterations} iterations (worst residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("argument principle gave {index} for a polynomial of degree {degree}")]
    InconsistentCount { index: i64, degree: usize },
    #[error(transparent)]
    Winding(#[from] WindingError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCountConfig {
    pub winding: WindingConfig,
    /// Bisection limit for the on-circle certification of one initial arc.
    pub max_circle_depth: u32,
}

impl Default for RootCountConfig {
    fn default() -> Self {
        RootCountConfig {
            winding: WindingConfig::default(),
            max_circle_depth: 24,
        }
    }
}

/// Result of counting roots in the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCount {
    /// Roots with modulus below 1, with multiplicity.
    pub inside: usize,
    /// Always `false` on a returned count; a detected circle root is an error.
    pub on_circle_detected: bool,
    /// Certified lower bound for `|p|` on the unit circle.
    pub min_modulus_on_circle: f64,
    /// Deepest bisection level used by the winding computation.
    pub refinement_depth: u32,
}

/// Certified lower bound of `|p(e^{i t})|` over the circle.
///
/// On an arc `[a, b]`, `|p'| <= L = sum k |c_k|` gives
/// `|p(t)| >= (|p(a)| + |p(b)| - L (b - a)) / 2`. Arcs whose bound is not
/// above the evaluation rounding error are bisected up to
/// `max_circle_depth` times.
pub fn circle_lower_bound(p: &UniPoly, config: &RootCountConfig) -> Result<f64, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let lip = p.derivative_bound_on_circle();
    // Horner on the circle is accurate to a small multiple of eps * sum |c_k|.
    let slack = 64.0 * f64::EPSILON * p.coeffs().iter().map(|c| c.norm()).sum::<f64>();
    let n = config.winding.initial_samples.max(3);
    let value = |t: f64| p.eval(Complex64::from_polar(1.0, t)).norm();
    let bounds: Vec<Result<f64, RootError>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let a = TAU * k as f64 / n as f64;
            let b = TAU * (k + 1) as f64 / n as f64;
            arc_bound(
                &value,
                lip,
                slack,
                (a, value(a)),
                (b, value(b)),
                0,
                config.max_circle_depth,
            )
        })
        .collect();
    bounds
        .into_iter()
        .try_fold(f64::INFINITY, |acc, b| b.map(|b| acc.min(b)))
}

fn arc_bound(
    value: &(impl Fn(f64) -> f64 + Sync),
    lip: f64,
    slack: f64,
    (a, va): (f64, f64),
    (b, vb): (f64, f64),
    depth: u32,
    max_depth: u32,
) -> Result<f64, RootError> {
    let bound = 0.5 * (va + vb - lip * (b - a));
    if bound > slack {
        return Ok(bound - slack);
    }
    if depth >= max_depth {
        return Err(RootError::RootOnCircle {
            angle: 0.5 * (a + b),
            bound,
        });
    }
    let m = 0.5 * (a + b);
    let vm = value(m);
    let left = arc_bound(value, lip, slack, (a, va), (m, vm), depth + 1, max_depth)?;
    let right = arc_bound(value, lip, slack, (m, vm), (b, vb), depth + 1, max_depth)?;
    Ok(left.min(right))
}

/// Number of roots of `p` in the open unit disk, with multiplicity.
pub fn count_roots_in_disk(p: &UniPoly, config: &RootCountConfig) -> Result<RootCount, RootError> {
    let min_modulus_on_circle = circle_lower_bound(p, config)?;
    let degree = p.degree().unwrap_or(0);
    let lp = SampledLoop::new(
        |t: f64| p.eval(Complex64::from_polar(1.0, t)),
        config.winding,
    );
    let trace = lp.trace().map_err(|e| match e {
        WindingError::LoopTooCloseToZero { angle, .. } => {
            RootError::RootOnCircle { angle, bound: 0.0 }
        }
        other => other.into(),
    })?;
    if trace.index < 0 || trace.index as usize > degree {
        return Err(RootError::InconsistentCount {
            index: trace.index,
            degree,
        });
    }
    Ok(RootCount {
        inside: trace.index as usize,
        on_circle_detected: false,
        min_modulus_on_circle,
        refinement_depth: trace.max_depth_reached,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootFinderConfig {
    pub max_iterations: usize,
    /// Bound on `|p(r)| / (1 + |r|)^n` for every returned root `r`, with `p`
    /// scaled to unit max-norm coefficients.
    pub residual_tol: f64,
}

impl Default for RootFinderConfig {
    fn default() -> Self {
        RootFinderConfig {
            max_iterations: 1000,
            residual_tol: 1e-8,
        }
    }
}

/// All `degree` roots of `p`, repeated by multiplicity, via Durand-Kerner
/// simultaneous iteration.
///
/// Roots at the origin are split off exactly first. The remaining iterates
/// start on a circle of radius `max(1, 2 max_k |c_k / c_n|)` with angles
/// offset from the symmetric positions.
pub fn find_all_roots(p: &UniPoly, config: &RootFinderConfig) -> Result<Vec<Complex64>, RootError> {
    let degree = match p.degree() {
        None => return Err(RootError::ZeroPolynomial),
        Some(0) => return Err(RootError::ConstantPolynomial),
        Some(d) => d,
    };
    let coeffs = p.coeffs();
    let zeros_at_origin = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];

    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs[zeros_at_origin..].iter().map(|c| c / lead).collect();
    let n = monic.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };

    let radius = monic[..n]
        .iter()
        .map(|c| 2.0 * c.norm())
        .fold(1.0_f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..config.max_iterations {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // Coincident iterates: nudge apart and keep going.
                let nudge = Complex64::new(1e-10, 1e-10) * (1.0 + z[i].norm());
                z[i] += nudge;
                max_step = f64::INFINITY;
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let worst = z
        .iter()
        .map(|&r| (p.eval(r).norm() / scale) / (1.0 + r.norm()).powi(degree as i32))
        .fold(
            0.0_f64,
            |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) },
        );
    if worst >= config.residual_tol {
        return Err(RootError::NoConvergence {
            iterations: config.max_iterations,
            residual: worst,
        });
    }
    roots.extend(z);
    Ok(roots)
}

/// Groups roots lying within `tol * (1 + |r|)` of a cluster's first member;
/// returns `(mean, multiplicity)` pairs. Heuristic.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for &r in roots {
        match clusters
            .iter_mut()
            .find(|(head, _)| (head - r).norm() <= tol * (1.0 + head.norm()))
        {
            Some((_, members)) => members.push(r),
            None => clusters.push((r, vec![r])),
        }
    }
    clusters
        .into_iter()
        .map(|(_, m)| (m.iter().sum::<Complex64>() / m.len() as f64, m.len()))
        .collect()
}
