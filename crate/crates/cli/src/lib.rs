//! Command-line front end: parses `f` and `g`, runs the degree pipeline and
//! renders a text summary or a JSON report.

use std::fmt::Write as _;

use clap::{ArgAction, Parser, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use s2degree::degree::Diagnostics;
use s2degree::parser::{parse_poly, parse_poly_exact, ParseError};
use s2degree::verify::degree_via_area_integral;
use s2degree::{
    degree_of, BiPoly, Coefficient, Complex64, DegreeError, DegreeOptions, DegreeReport, MapSpec,
    MethodPreference,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    #[value(name = "theorem2")]
    RootCount,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Degree of the map R = f/g of the Riemann sphere, for polynomials f, g in
/// z and conj(z).
#[derive(Debug, Clone, Parser)]
#[command(name = "s2degree", version)]
pub struct CliConfig {
    /// Numerator, e.g. "z^2*conj(z) + 3*i"
    #[arg(long = "f", value_name = "EXPR")]
    pub f_expr: String,
    /// Denominator
    #[arg(long = "g", value_name = "EXPR")]
    pub g_expr: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Contour radius M for the winding route
    #[arg(long)]
    pub radius: Option<f64>,
    /// Certify that f and g have no common zero
    #[arg(long, action = ArgAction::Set, default_value_t = true, value_name = "BOOL")]
    pub check_common_zeros: bool,
    /// Also compute the area-integral degree as a cross-check
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Initial number of contour arcs
    #[arg(long)]
    pub samples: Option<usize>,
    /// Maximum bisection depth per arc
    #[arg(long)]
    pub max_depth: Option<u32>,
    /// Smallest |f| accepted on the contour
    #[arg(long)]
    pub min_modulus: Option<f64>,
    /// Use exact rational coefficients
    #[arg(long)]
    pub exact: bool,
    /// Grid size per side for the area oracle
    #[arg(long, default_value_t = 400)]
    pub grid: usize,
}

impl CliConfig {
    pub fn new(f: &str, g: &str) -> Self {
        CliConfig::parse_from(["s2degree", "--f", f, "--g", g])
    }

    fn options(&self) -> DegreeOptions {
        let mut options = DegreeOptions {
            method: match self.method {
                MethodArg::Auto => MethodPreference::Auto,
                MethodArg::RootCount => MethodPreference::RootCount,
                MethodArg::Numeric => MethodPreference::Numeric,
            },
            check_common_zeros: self.check_common_zeros,
            ..Default::default()
        };
        let w = &mut options.roots.winding;
        if let Some(n) = self.samples {
            w.initial_samples = n;
        }
        if let Some(d) = self.max_depth {
            w.max_depth = d;
        }
        if let Some(m) = self.min_modulus {
            w.min_modulus = m;
        }
        options
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {which}: {source}")]
    Parse {
        which: &'static str,
        source: ParseError,
    },
    #[error("invalid option: {0}")]
    Usage(String),
    #[error("{0}")]
    Degree(#[from] DegreeError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Degree(e) if e.is_hypothesis_failure() => EXIT_HYPOTHESIS,
            _ => EXIT_USAGE,
        }
    }

    /// Stable name of the failure, used in the JSON error object.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Usage(_) => "UsageError",
            CliError::Degree(e) => match e {
                DegreeError::BothZero => "BothZero",
                DegreeError::MissingRadius => "MissingRadius",
                DegreeError::InvalidRadius(_) => "InvalidRadius",
                DegreeError::CommonZeroSuspected { .. } => "CommonZeroSuspected",
                DegreeError::LimitDoesNotExist { .. } => "LimitDoesNotExist",
                DegreeError::TDominanceFailure { .. } => "TDominanceFailure",
                DegreeError::NumericPath { .. } => "NumericPathFailure",
                DegreeError::Roots(_) => "RootCountFailure",
                DegreeError::Verify(_) => "VerifyFailure",
                DegreeError::Poly(_) => "PolynomialError",
            },
        }
    }
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonReport {
    pub degree: i64,
    pub method: &'static str,
    pub d: i32,
    #[serde(rename = "M")]
    pub m: Option<f64>,
    pub roots_inside: Option<usize>,
    #[serde(rename = "tilde_T_coefficients")]
    pub tilde_t_coefficients: Option<Vec<[f64; 2]>>,
    pub diagnostics: JsonDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsonDiagnostics {
    #[serde(rename = "min_T_on_circle")]
    pub min_t_on_circle: Option<f64>,
    pub refinement_depth: u32,
    pub common_zero_certified: Option<bool>,
    pub oracle_value: Option<f64>,
    pub mobius_constant: Option<[f64; 2]>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct JsonError<'a> {
    error: &'a str,
    message: String,
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

impl JsonReport {
    pub fn new(report: &DegreeReport, oracle_value: Option<f64>) -> Self {
        let Diagnostics {
            min_t_on_circle,
            winding_refinement_depth,
            mobius_constant,
            common_zero_certified,
            warnings,
        } = report.diagnostics.clone();
        JsonReport {
            degree: report.degree,
            method: report.method.as_str(),
            d: report.d,
            m: report.radius,
            roots_inside: report.roots_inside,
            tilde_t_coefficients: report
                .tilde_t
                .as_ref()
                .map(|t| t.coeffs().iter().copied().map(pair).collect()),
            diagnostics: JsonDiagnostics {
                min_t_on_circle,
                refinement_depth: winding_refinement_depth,
                common_zero_certified,
                oracle_value,
                mobius_constant: mobius_constant.map(pair),
                warnings,
            },
        }
    }
}

/// Runs the full pipeline for one configuration.
pub fn run(config: &CliConfig) -> Outcome {
    match compute(config) {
        Ok((report, oracle)) => Outcome {
            code: EXIT_OK,
            stdout: match config.output {
                OutputFormat::Json => to_json(&JsonReport::new(&report, oracle)),
                OutputFormat::Text => render_text(&report, oracle),
            },
            stderr: String::new(),
        },
        Err(e) => {
            let code = e.exit_code();
            match config.output {
                OutputFormat::Json => Outcome {
                    code,
                    stdout: to_json(&JsonError {
                        error: e.kind(),
                        message: e.to_string(),
                    }),
                    stderr: String::new(),
                },
                OutputFormat::Text => Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error ({}): {e}\n", e.kind()),
                },
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report is serializable");
    s.push('\n');
    s
}

/// Degree report plus the oracle value when requested.
pub fn compute(config: &CliConfig) -> Result<(DegreeReport, Option<f64>), CliError> {
    if config.grid < 2 {
        return Err(CliError::Usage(format!(
            "--grid must be at least 2, got {}",
            config.grid
        )));
    }
    let options = config.options();
    let report = if config.exact {
        let f = parse_poly_exact(&config.f_expr)
            .map_err(|source| CliError::Parse { which: "f", source })?;
        let g = parse_poly_exact(&config.g_expr)
            .map_err(|source| CliError::Parse { which: "g", source })?;
        evaluate(f, g, config, &options)?
    } else {
        let f =
            parse_poly(&config.f_expr).map_err(|source| CliError::Parse { which: "f", source })?;
        let g =
            parse_poly(&config.g_expr).map_err(|source| CliError::Parse { which: "g", source })?;
        evaluate(f, g, config, &options)?
    };
    Ok(report)
}

fn evaluate<C: Coefficient>(
    f: BiPoly<C>,
    g: BiPoly<C>,
    config: &CliConfig,
    options: &DegreeOptions,
) -> Result<(DegreeReport, Option<f64>), CliError> {
    let mut spec = MapSpec::polynomial(f.clone(), g.clone());
    if let Some(r) = config.radius {
        spec = spec.with_radius(r);
    }
    let mut report = degree_of(&spec, options)?;
    let oracle = if config.oracle {
        match degree_via_area_integral(&f.to_complex64(), &g.to_complex64(), config.grid) {
            Ok(v) => Some(v),
            Err(e) => {
                report
                    .diagnostics
                    .warnings
                    .push(format!("oracle unavailable: {e}"));
                None
            }
        }
    } else {
        None
    };
    Ok((report, oracle))
}

fn render_text(report: &DegreeReport, oracle: Option<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree: {}", report.degree);
    let _ = writeln!(out, "method: {}", report.method);
    if report.d >= 0 {
        let _ = writeln!(out, "algebraic degree d: {}", report.d);
    }
    if let Some(m) = report.radius {
        let _ = writeln!(out, "contour radius M: {m}");
    }
    if let Some(n) = report.roots_inside {
        let _ = writeln!(out, "roots of T~ in the open unit disk: {n}");
    }
    if let Some(t) = &report.tilde_t {
        let _ = writeln!(out, "T~(z) = {t}");
    }
    let diag = &report.diagnostics;
    if let Some(m) = diag.min_t_on_circle {
        let _ = writeln!(out, "min |T~| on unit circle >= {m:e}");
    }
    if let Some(c) = diag.mobius_constant {
        let _ = writeln!(out, "limit at infinity removed: {c}");
    }
    let _ = writeln!(
        out,
        "contour refinement depth: {}",
        diag.winding_refinement_depth
    );
    match diag.common_zero_certified {
        Some(true) => out.push_str("common zeros of f and g: certified absent\n"),
        Some(false) => out.push_str("common zeros of f and g: not certified\n"),
        None => out.push_str("common zeros of f and g: not checked\n"),
    }
    if let Some(v) = oracle {
        let _ = writeln!(out, "area-integral oracle: {v:.6}");
    }
    for w in &diag.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
