//! Winding number about the origin of a closed loop in the punctured plane.
//!
//! The index is the total change of argument divided by `2 pi`. The loop is
//! sampled on a uniform grid of angles and every arc whose argument
//! increment is not clearly below a quarter turn is bisected, so each
//! increment is taken on an unambiguous branch of `arg`.
//!
//! Sampling assumption: between two accepted samples the loop does not wind
//! around the origin. This holds for Lipschitz loops once the grid is fine
//! relative to `|loop| / Lipschitz constant`; it cannot be certified for an
//! arbitrary continuous sampler.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

/// Maximum gap `|loop(0) - loop(2 pi)|`, relative to `max(1, |loop(0)|)`.
pub const CLOSURE_TOL: f64 = 1e-9;
/// Accepted distance of the accumulated turn count from an integer.
pub const INTEGER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingConfig {
    /// Number of uniform arcs before refinement.
    pub initial_samples: usize,
    /// Absolute floor on `|loop(phi)|`; samples below it reject the loop.
    pub min_modulus: f64,
    /// Maximum number of bisections of one initial arc.
    pub max_depth: u32,
}

impl Default for WindingConfig {
    fn default() -> Self {
        WindingConfig {
            initial_samples: 256,
            min_modulus: 1e-12,
            max_depth: 30,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WindingError {
    #[error("loop passes within {modulus:e} of the origin at angle {angle}")]
    LoopTooCloseToZero { angle: f64, modulus: f64 },
    #[error("argument increment near angle {angle} still exceeds a quarter turn after {max_depth} bisections")]
    UnresolvedLoop { angle: f64, max_depth: u32 },
    #[error("accumulated turns {turns} are not within {INTEGER_TOL:e} of an integer")]
    NonIntegerIndex { turns: f64 },
    #[error("loop is not closed: |loop(0) - loop(2 pi)| = {gap:e}")]
    NotClosed { gap: f64 },
    #[error("invalid winding configuration: {0}")]
    InvalidConfig(&'static str),
}

/// Refined samples of a loop together with its index.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopTrace {
    pub index: i64,
    /// Unrounded accumulated argument divided by `2 pi`.
    pub turns: f64,
    /// Accepted samples, strictly increasing in angle from 0 to `2 pi`.
    pub samples: Vec<(f64, Complex64)>,
    /// Deepest bisection level used on any arc.
    pub max_depth_reached: u32,
    pub min_sample_modulus: f64,
}

/// A closed loop `[0, 2 pi] -> C \ {0}` given by a sampler.
///
/// The sampler must be a pure function of the angle; it may be called from
/// several threads at once.
#[derive(Clone)]
pub struct SampledLoop<F> {
    sampler: F,
    config: WindingConfig,
}

impl<F> SampledLoop<F>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    pub fn new(sampler: F, config: WindingConfig) -> Self {
        SampledLoop { sampler, config }
    }

    pub fn with_defaults(sampler: F) -> Self {
        Self::new(sampler, WindingConfig::default())
    }

    pub fn config(&self) -> &WindingConfig {
        &self.config
    }

    fn sample(&self, phi: f64) -> Result<Complex64, WindingError> {
        let v = (self.sampler)(phi);
        let modulus = v.norm();
        if modulus.is_nan() || modulus < self.config.min_modulus {
            return Err(WindingError::LoopTooCloseToZero {
                angle: phi,
                modulus,
            });
        }
        Ok(v)
    }

    fn validate(&self) -> Result<(), WindingError> {
        let c = &self.config;
        if c.initial_samples < 3 {
            return Err(WindingError::InvalidConfig(
                "initial_samples must be at least 3",
            ));
        }
        if c.min_modulus.is_nan() || c.min_modulus <= 0.0 {
            return Err(WindingError::InvalidConfig("min_modulus must be positive"));
        }
        Ok(())
    }

    /// The winding number of the loop about 0.
    pub fn winding_number(&self) -> Result<i64, WindingError> {
        self.trace().map(|t| t.index)
    }

    /// Runs the adaptive sampling and returns the refined samples and index.
    pub fn trace(&self) -> Result<LoopTrace, WindingError> {
        self.validate()?;
        let n = self.config.initial_samples;
        let grid: Vec<Complex64> = (0..=n)
            .into_par_iter()
            .map(|k| self.sample(angle(k, n)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<_, _>>()?;

        let gap = (grid[0] - grid[n]).norm();
        if gap > CLOSURE_TOL * grid[0].norm().max(1.0) {
            return Err(WindingError::NotClosed { gap });
        }

        let arcs: Vec<Arc> = (0..n)
            .into_par_iter()
            .map(|k| {
                let mut arc = Arc::default();
                self.refine(
                    (angle(k, n), grid[k]),
                    (angle(k + 1, n), grid[k + 1]),
                    0,
                    &mut arc,
                )?;
                Ok(arc)
            })
            .collect::<Vec<Result<Arc, WindingError>>>()
            .into_iter()
            .collect::<Result<_, _>>()?;

        let mut samples = Vec::with_capacity(n + 1);
        samples.push((0.0, grid[0]));
        let mut total = 0.0;
        let mut depth = 0;
        for arc in arcs {
            total += arc.increment;
            depth = depth.max(arc.depth);
            samples.extend(arc.samples);
        }
        let turns = total / TAU;
        let index = turns.round();
        if (turns - index).abs() > INTEGER_TOL {
            return Err(WindingError::NonIntegerIndex { turns });
        }
        let min_sample_modulus = samples
            .iter()
            .map(|(_, v)| v.norm())
            .fold(f64::INFINITY, f64::min);
        Ok(LoopTrace {
            index: index as i64,
            turns,
            samples,
            max_depth_reached: depth,
            min_sample_modulus,
        })
    }

    fn refine(
        &self,
        (a, va): (f64, Complex64),
        (b, vb): (f64, Complex64),
        depth: u32,
        out: &mut Arc,
    ) -> Result<(), WindingError> {
        let increment = arg_increment(va, vb);
        if increment.abs() < FRAC_PI_2 {
            out.increment += increment;
            out.depth = out.depth.max(depth);
            out.samples.push((b, vb));
            return Ok(());
        }
        if depth >= self.config.max_depth {
            return Err(WindingError::UnresolvedLoop {
                angle: 0.5 * (a + b),
                max_depth: self.config.max_depth,
            });
        }
        let mid = 0.5 * (a + b);
        let vm = self.sample(mid)?;
        self.refine((a, va), (mid, vm), depth + 1, out)?;
        self.refine((mid, vm), (b, vb), depth + 1, out)
    }

    /// `(1 / 2 pi i) * integral_0^{2 pi} loop'(t) / loop(t) dt` by the
    /// 4096-point composite trapezoid rule with central differences of step
    /// `2 pi / 8192`. Unrounded; intended as a cross-check of
    /// [`winding_number`](Self::winding_number) on smooth loops.
    pub fn winding_integral(&self) -> Result<Complex64, WindingError> {
        const POINTS: usize = 4096;
        let h = TAU / 8192.0;
        let dt = TAU / POINTS as f64;
        let eval = |t: f64| (self.sampler)(t.rem_euclid(TAU));
        let terms: Vec<Complex64> = (0..POINTS)
            .into_par_iter()
            .map(|k| {
                let t = k as f64 * dt;
                let v = self.sample(t)?;
                let dv = (eval(t + h) - eval(t - h)) / (2.0 * h);
                Ok(dv / v)
            })
            .collect::<Vec<Result<_, WindingError>>>()
            .into_iter()
            .collect::<Result<_, _>>()?;
        let sum: Complex64 = terms.into_iter().sum();
        Ok(sum * dt / Complex64::new(0.0, TAU))
    }
}

#[derive(Default)]
struct Arc {
    increment: f64,
    depth: u32,
    samples: Vec<(f64, Complex64)>,
}

fn angle(k: usize, n: usize) -> f64 {
    if k == n {
        TAU
    } else {
        TAU * k as f64 / n as f64
    }
}

/// Principal argument of `b / a`, in `(-pi, pi]`.
fn arg_increment(a: Complex64, b: Complex64) -> f64 {
    let r = (b * a.conj()).arg();
    if r == -PI {
        PI
    } else {
        r
    }
}

/// Winding number of `phi -> f(center + radius e^{i phi})`.
pub fn circle_winding<G>(
    f: G,
    radius: f64,
    config: WindingConfig,
) -> Result<LoopTrace, WindingError>
where
    G: Fn(Complex64) -> Complex64 + Sync,
{
    SampledLoop::new(|phi: f64| f(Complex64::from_polar(radius, phi)), config).trace()
}
