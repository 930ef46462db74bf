//! Degree of `R = f / g` on the Riemann sphere.
//!
//! Conventions: `R(z) = inf` where `g(z) = 0` and at `z = inf`. For a map
//! with `R -> inf` at infinity whose numerator `f` has no zeros on
//! `|z| >= M`, the degree is the winding number of `phi -> f(M e^{i phi})`.
//!
//! For polynomials in `z` and `conj(z)` with `deg f > deg g` and top
//! homogeneous component `T` of `f` (degree `d`), the degree is the number of
//! roots of `z^d T(z, 1/z)` in the open unit disk minus `d`. The remaining
//! polynomial cases reduce to that one:
//!
//! | case                               | reduction                           |
//! |------------------------------------|-------------------------------------|
//! | `f = 0` or `g = 0`                 | constant map, degree 0              |
//! | `deg f > deg g`                    | direct                              |
//! | `deg g > deg f`                    | `1/R = g/f`                         |
//! | `deg f = deg g`, `T_f = c T_g`     | `1/(R - c) = g/(f - c g)`           |
//! | `deg f = deg g`, not proportional  | no limit at infinity: error         |
//!
//! Both reductions post-compose `R` with a Möbius transformation, which has
//! degree 1.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::disk_roots::{count_roots_in_disk, RootCountConfig, RootError};
use crate::function::ComplexFn;
use crate::poly::{BiPoly, BiPolyError, Coefficient, UniPoly};
use crate::verify::{
    certify_no_common_zeros, Box2, CertifyConfig, InconclusiveReason, VerifyError,
};
use crate::winding::{circle_winding, WindingConfig, WindingError};

/// Relative tolerance for proportional top components in floating mode.
pub const PROPORTIONALITY_TOL: f64 = 1e-9;

/// How a degree was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    RootCount,
    RootCountAfterInversion,
    RootCountAfterMobius,
    NumericWinding,
    ConstantMap,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::RootCount => "theorem2",
            Method::RootCountAfterInversion => "theorem2_after_inversion",
            Method::RootCountAfterMobius => "theorem2_after_mobius",
            Method::NumericWinding => "numeric_winding",
            Method::ConstantMap => "constant_map",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which route [`degree_of`] should take for polynomial input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodPreference {
    /// Root counting; falls back to the winding route when the root count is
    /// inapplicable and a radius was supplied.
    #[default]
    Auto,
    /// Root counting only.
    RootCount,
    /// Winding number on `|z| = M`, with `M` supplied or derived.
    Numeric,
}

pub type Sampler = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Numerator or denominator of a map.
#[derive(Clone)]
pub enum MapFn<C = Complex64> {
    Poly(BiPoly<C>),
    Sampled(Sampler),
}

impl<C: Coefficient> MapFn<C> {
    pub fn sampled(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        MapFn::Sampled(Arc::new(f))
    }
}

impl<C: Coefficient> ComplexFn for MapFn<C> {
    fn eval_at(&self, z: Complex64) -> Complex64 {
        match self {
            MapFn::Poly(p) => p.eval(z),
            MapFn::Sampled(s) => s(z),
        }
    }
}

impl<C: fmt::Debug> fmt::Debug for MapFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapFn::Poly(p) => write!(f, "Poly({p:?})"),
            MapFn::Sampled(_) => f.write_str("Sampled(..)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Polynomial,
    Sampled,
}

/// The map `R = f / g`.
#[derive(Debug, Clone)]
pub struct MapSpec<C = Complex64> {
    pub f: MapFn<C>,
    pub g: MapFn<C>,
    /// Radius `M` of the contour; mandatory for sampled maps.
    pub radius_override: Option<f64>,
}

impl<C: Coefficient> MapSpec<C> {
    pub fn polynomial(f: BiPoly<C>, g: BiPoly<C>) -> Self {
        MapSpec {
            f: MapFn::Poly(f),
            g: MapFn::Poly(g),
            radius_override: None,
        }
    }

    pub fn sampled(f: MapFn<C>, g: MapFn<C>, radius: f64) -> Self {
        MapSpec {
            f,
            g,
            radius_override: Some(radius),
        }
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius_override = Some(radius);
        self
    }

    pub fn kind(&self) -> MapKind {
        match (&self.f, &self.g) {
            (MapFn::Poly(_), MapFn::Poly(_)) => MapKind::Polynomial,
            _ => MapKind::Sampled,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeOptions {
    pub method: MethodPreference,
    /// Certify that `f` and `g` have no common zero before computing.
    pub check_common_zeros: bool,
    pub roots: RootCountConfig,
    pub certify: CertifyConfig,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions {
            method: MethodPreference::Auto,
            check_common_zeros: false,
            roots: RootCountConfig::default(),
            certify: CertifyConfig::default(),
        }
    }
}

impl DegreeOptions {
    pub fn winding(&self) -> &WindingConfig {
        &self.roots.winding
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    /// Certified lower bound of `|T|` on the unit circle.
    pub min_t_on_circle: Option<f64>,
    pub winding_refinement_depth: u32,
    /// The finite limit `c` removed by the Möbius reduction.
    pub mobius_constant: Option<Complex64>,
    /// `None` when no check was requested.
    pub common_zero_certified: Option<bool>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeReport {
    pub degree: i64,
    pub method: Method,
    /// Algebraic degree of the numerator after reduction; -1 if undefined.
    pub d: i32,
    /// Contour radius `M`.
    pub radius: Option<f64>,
    pub roots_inside: Option<usize>,
    /// The univariate polynomial whose disk roots were counted.
    pub tilde_t: Option<UniPoly>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DegreeError {
    #[error("f and g are both identically zero; R is undefined")]
    BothZero,
    #[error("a sampled map needs an explicit radius M")]
    MissingRadius,
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("f and g may have a common zero in {region}; R is not well defined there")]
    CommonZeroSuspected { region: Box2 },
    #[error("deg f = deg g = {degree} but the top components are not proportional: R has no limit as |z| -> inf")]
    LimitDoesNotExist { degree: i32 },
    #[error("the top homogeneous component T vanishes on the unit circle (near angle {angle}); root counting does not apply, supply a radius M to use the winding route")]
    TDominanceFailure { angle: f64 },
    #[error("winding number of f on |z| = {radius} failed ({source}); f must not vanish for |z| >= M, try a larger radius")]
    NumericPath { radius: f64, source: WindingError },
    #[error(transparent)]
    Roots(RootError),
    #[error(transparent)]
    Verify(VerifyError),
    #[error(transparent)]
    Poly(#[from] BiPolyError),
}

impl DegreeError {
    /// True when a hypothesis on `f` and `g` fails, as opposed to bad input
    /// or a numerical breakdown.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            DegreeError::CommonZeroSuspected { .. }
                | DegreeError::LimitDoesNotExist { .. }
                | DegreeError::TDominanceFailure { .. }
                | DegreeError::NumericPath {
                    source: WindingError::LoopTooCloseToZero { .. },
                    ..
                }
        )
    }
}

fn check_radius(r: f64) -> Result<f64, DegreeError> {
    if r > 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err(DegreeError::InvalidRadius(r))
    }
}

/// Computes the degree of `R = f / g`.
///
/// `f` and `g` must not have a common zero; set
/// [`DegreeOptions::check_common_zeros`] to certify this for polynomials.
pub fn degree_of<C: Coefficient>(
    spec: &MapSpec<C>,
    options: &DegreeOptions,
) -> Result<DegreeReport, DegreeError> {
    let radius = spec.radius_override.map(check_radius).transpose()?;
    match (&spec.f, &spec.g) {
        (MapFn::Poly(f), MapFn::Poly(g)) => polynomial_degree(f, g, radius, options),
        (f, g) => numeric_degree(
            f,
            g,
            radius.ok_or(DegreeError::MissingRadius)?,
            options.winding(),
        ),
    }
}

/// Degree as the winding number of `phi -> f(M e^{i phi})`.
///
/// The caller asserts `R -> inf` at infinity and `f != 0` on `|z| >= M`;
/// only the circle `|z| = M` is sampled. `g` is sampled on the same circle
/// only to warn about poles close to the contour.
pub fn numeric_degree<F, G>(
    f: &F,
    g: &G,
    radius: f64,
    config: &WindingConfig,
) -> Result<DegreeReport, DegreeError>
where
    F: ComplexFn + ?Sized,
    G: ComplexFn + ?Sized,
{
    let radius = check_radius(radius)?;
    let trace = circle_winding(|z| f.eval_at(z), radius, *config)
        .map_err(|source| DegreeError::NumericPath { radius, source })?;

    let mut diagnostics = Diagnostics {
        winding_refinement_depth: trace.max_depth_reached,
        ..Default::default()
    };
    let max_f = trace
        .samples
        .iter()
        .map(|(_, v)| v.norm())
        .fold(0.0, f64::max);
    let min_g = trace
        .samples
        .iter()
        .map(|&(phi, _)| g.eval_at(Complex64::from_polar(radius, phi)).norm())
        .fold(f64::INFINITY, f64::min);
    if min_g <= 1e-9 * max_f {
        diagnostics.warnings.push(format!(
            "g nearly vanishes on |z| = {radius}: a pole of R lies close to the contour"
        ));
    }
    Ok(DegreeReport {
        degree: trace.index,
        method: Method::NumericWinding,
        d: -1,
        radius: Some(radius),
        roots_inside: None,
        tilde_t: None,
        diagnostics,
    })
}

/// Smallest `M` in `1, 2, 4, ...` with `m_T M^d > sum_{j<d} C_j M^j`, where
/// `C_j` are the coefficient norms of `f` by total degree.
///
/// Then `|T(z)| > |f(z) - T(z)|` for every `|z| >= M`, so `f` has no zeros
/// there and `phi -> f(M e^{i phi})` winds like `T`.
pub fn dominance_radius_with_bound(
    norms: &[(u32, f64)],
    d: u32,
    min_t_on_circle: f64,
) -> Result<f64, DegreeError> {
    if min_t_on_circle.is_nan() || min_t_on_circle <= 0.0 {
        return Err(DegreeError::TDominanceFailure { angle: f64::NAN });
    }
    let mut m = 1.0_f64;
    for _ in 0..1024 {
        // Divided through by M^d to stay in range.
        let tail: f64 = norms
            .iter()
            .filter(|&&(j, _)| j < d)
            .map(|&(j, c)| c * m.powi(j as i32 - d as i32))
            .sum();
        if min_t_on_circle > tail {
            return Ok(m);
        }
        m *= 2.0;
    }
    Err(DegreeError::TDominanceFailure { angle: f64::NAN })
}

/// Dominance radius for `f` with top component `top`.
pub fn dominance_radius<C: Coefficient>(
    f: &BiPoly<C>,
    top: &BiPoly<C>,
    config: &RootCountConfig,
) -> Result<f64, DegreeError> {
    let d = top.degree();
    if d < 0 || !top.is_homogeneous() || d != f.degree() {
        return Err(BiPolyError::NotHomogeneous {
            low: 0,
            high: d.max(0) as u32,
        }
        .into());
    }
    let tilde = top.associated_poly()?;
    let bound = crate::disk_roots::circle_lower_bound(&tilde, config).map_err(root_error)?;
    dominance_radius_with_bound(&f.homogeneous_coeff_norms(), d as u32, bound)
}

fn root_error(e: RootError) -> DegreeError {
    match e {
        RootError::RootOnCircle { angle, .. } => DegreeError::TDominanceFailure { angle },
        other => DegreeError::Roots(other),
    }
}

/// Result of removing a finite limit at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusReduction<C = Complex64> {
    pub numerator: BiPoly<C>,
    pub denominator: BiPoly<C>,
    /// `c = lim R` at infinity.
    pub constant: C,
}

/// For `deg f = deg g` with `T_f = c T_g`, returns `g / (f - c g)`, which is
/// `1 / (R - c)`. The top components cancel by construction, so the new
/// denominator has strictly smaller degree than the numerator.
pub fn mobius_reduce<C: Coefficient>(
    f: &BiPoly<C>,
    g: &BiPoly<C>,
) -> Result<MobiusReduction<C>, DegreeError> {
    let d = f.degree();
    if d < 0 || d != g.degree() {
        return Err(DegreeError::LimitDoesNotExist {
            degree: d.max(g.degree()),
        });
    }
    let tf = f.top_component()?;
    let tg = g.top_component()?;
    let (pivot, pivot_g) = tg
        .terms()
        .max_by(|a, b| a.1.modulus().total_cmp(&b.1.modulus()))
        .expect("top component is nonzero");
    let pivot_f = tf.coeff(pivot.0, pivot.1).cloned().unwrap_or_else(C::zero);
    let c = pivot_f / pivot_g.clone();
    let proportional = tf
        .terms()
        .map(|(k, _)| k)
        .chain(tg.terms().map(|(k, _)| k))
        .all(|(p, q)| {
            let a = tf.coeff(p, q).cloned().unwrap_or_else(C::zero);
            let b = tg.coeff(p, q).cloned().unwrap_or_else(C::zero) * c.clone();
            a.close_to(&b, PROPORTIONALITY_TOL)
        });
    if !proportional || c.is_zero() {
        return Err(DegreeError::LimitDoesNotExist { degree: d });
    }
    let rest = (f - &g.scale(&c)).without_component(d);
    Ok(MobiusReduction {
        numerator: g.clone(),
        denominator: rest,
        constant: c,
    })
}

fn polynomial_degree<C: Coefficient>(
    f: &BiPoly<C>,
    g: &BiPoly<C>,
    radius: Option<f64>,
    options: &DegreeOptions,
) -> Result<DegreeReport, DegreeError> {
    if f.is_zero() && g.is_zero() {
        return Err(DegreeError::BothZero);
    }
    let mut diagnostics = Diagnostics::default();
    if f.is_zero() || g.is_zero() {
        return Ok(constant_map(f.degree().max(g.degree()), diagnostics));
    }
    if options.check_common_zeros {
        diagnostics.common_zero_certified =
            Some(check_common_zeros(f, g, radius, options, &mut diagnostics)?);
    }

    let (num, den, method) = match f.degree().cmp(&g.degree()) {
        std::cmp::Ordering::Greater => (f.clone(), g.clone(), Method::RootCount),
        std::cmp::Ordering::Less => (g.clone(), f.clone(), Method::RootCountAfterInversion),
        std::cmp::Ordering::Equal => {
            let red = mobius_reduce(f, g)?;
            diagnostics.mobius_constant = Some(red.constant.to_complex64());
            if red.denominator.is_zero() {
                // R is identically the constant c.
                return Ok(constant_map(f.degree(), diagnostics));
            }
            (red.numerator, red.denominator, Method::RootCountAfterMobius)
        }
    };
    let d = num.degree();

    if options.method == MethodPreference::Numeric {
        let m = match radius {
            Some(m) => m,
            None => dominance_radius(&num, &num.top_component()?, &options.roots)?,
        };
        return numeric_report(&num, &den, m, d, options, diagnostics);
    }

    let tilde = num.top_component()?.associated_poly()?;
    match count_roots_in_disk(&tilde, &options.roots) {
        Ok(rc) => {
            let m = dominance_radius_with_bound(
                &num.homogeneous_coeff_norms(),
                d as u32,
                rc.min_modulus_on_circle,
            )?;
            diagnostics.min_t_on_circle = Some(rc.min_modulus_on_circle);
            diagnostics.winding_refinement_depth = rc.refinement_depth;
            Ok(DegreeReport {
                degree: rc.inside as i64 - d as i64,
                method,
                d,
                radius: Some(m),
                roots_inside: Some(rc.inside),
                tilde_t: Some(tilde),
                diagnostics,
            })
        }
        Err(RootError::RootOnCircle { angle, .. }) => match (options.method, radius) {
            (MethodPreference::Auto, Some(m)) => {
                diagnostics.warnings.push(format!(
                    "T vanishes on the unit circle near angle {angle:.6}; used the winding route on |z| = {m}"
                ));
                numeric_report(&num, &den, m, d, options, diagnostics)
            }
            _ => Err(DegreeError::TDominanceFailure { angle }),
        },
        Err(e) => Err(DegreeError::Roots(e)),
    }
}

fn numeric_report<C: Coefficient>(
    num: &BiPoly<C>,
    den: &BiPoly<C>,
    radius: f64,
    d: i32,
    options: &DegreeOptions,
    mut diagnostics: Diagnostics,
) -> Result<DegreeReport, DegreeError> {
    let mut report = numeric_degree(
        &num.to_complex64(),
        &den.to_complex64(),
        radius,
        options.winding(),
    )?;
    diagnostics.winding_refinement_depth = report.diagnostics.winding_refinement_depth;
    diagnostics
        .warnings
        .append(&mut report.diagnostics.warnings);
    report.d = d;
    report.diagnostics = diagnostics;
    Ok(report)
}

fn constant_map(d: i32, diagnostics: Diagnostics) -> DegreeReport {
    DegreeReport {
        degree: 0,
        method: Method::ConstantMap,
        d,
        radius: None,
        roots_inside: None,
        tilde_t: None,
        diagnostics,
    }
}

/// Certifies on a disk outside which `f` or `g` provably does not vanish.
/// Returns `Ok(false)` (with a warning) when certification is not possible
/// or ran out of budget, and an error when a common zero is localized.
fn check_common_zeros<C: Coefficient>(
    f: &BiPoly<C>,
    g: &BiPoly<C>,
    radius: Option<f64>,
    options: &DegreeOptions,
    diagnostics: &mut Diagnostics,
) -> Result<bool, DegreeError> {
    let outer = [f, g]
        .into_iter()
        .filter_map(|p| {
            let top = p.top_component().ok()?;
            dominance_radius(p, &top, &options.roots).ok()
        })
        .reduce(f64::min)
        .or(radius);
    let Some(outer) = outer else {
        diagnostics.warnings.push(
            "no radius is known outside which f or g is nonzero; common zeros not certified".into(),
        );
        return Ok(false);
    };
    match certify_no_common_zeros(f, g, outer, &options.certify) {
        Ok(_) => Ok(true),
        Err(VerifyError::Inconclusive {
            region,
            reason: InconclusiveReason::MinBoxSize,
        }) => Err(DegreeError::CommonZeroSuspected { region }),
        Err(e @ VerifyError::Inconclusive { .. }) => {
            diagnostics
                .warnings
                .push(format!("no-common-zero hypothesis uncertified: {e}"));
            Ok(false)
        }
        Err(e) => Err(DegreeError::Verify(e)),
    }
}
