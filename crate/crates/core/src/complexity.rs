//! Complexity `C = ¼ Σ (log Δ⁽ⁱ⁾)²` summed over both modes, its offset
//! `ΔC(θ) = C(θ) − C(0)`, curves over a phase grid and knob sweeps.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::Mode;
use crate::params::{DerivedParams, ModelParams};
use crate::spectrum::{
    eigen_minus_closed, eigen_numeric, eigen_plus_perturbative, eigen_simple_limit,
    eigen_simple_limit_strict, Method, RelativeSpectrum,
};

pub const DEFAULT_SAMPLES: usize = 401;
pub const DEFAULT_THETA_MAX: f64 = 4.0 * PI;

/// How spectra are produced for a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scheme {
    pub method: Method,
    /// Drop the reciprocal `−` eigenvalue in the simple limit.
    pub strict_paper_spectrum: bool,
}

impl From<Method> for Scheme {
    fn from(method: Method) -> Self {
        Self {
            method,
            strict_paper_spectrum: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexitySample {
    pub theta: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub c_total: f64,
    pub delta_c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityCurve {
    pub params: ModelParams,
    pub scheme: Scheme,
    pub samples: Vec<ComplexitySample>,
    pub c_at_zero: f64,
}

impl ComplexityCurve {
    pub fn max_delta_c(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.delta_c)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `¼ Σᵢ (log Δ⁽ⁱ⁾)²`.
pub fn cost_from_spectrum(s: &RelativeSpectrum) -> Result<f64> {
    let mut total = 0.0;
    for &x in &s.eigenvalues {
        if x.is_nan() || x <= 0.0 {
            return Err(Error::NonPositiveEigenvalue { value: x });
        }
        total += x.ln().powi(2);
    }
    Ok(0.25 * total)
}

/// Spectrum of one mode under `scheme`.
///
/// `ClosedForm` has no closed form for the `+` mode and uses the cubic there.
/// In the simple limit at `d̃ = 0` the `+` mode falls back to the exact
/// zero-field spectrum, since the small eigenvalue `4d̃²λ_R` vanishes.
pub fn mode_spectrum(
    mode: Mode,
    d: &DerivedParams,
    theta: f64,
    scheme: Scheme,
) -> Result<RelativeSpectrum> {
    match (scheme.method, mode) {
        (Method::ClosedForm | Method::Perturbative, Mode::Minus) => {
            Ok(eigen_minus_closed(d, theta))
        }
        (Method::ClosedForm | Method::Numeric, _) => eigen_numeric(mode, d, theta),
        (Method::Perturbative, Mode::Plus) => eigen_plus_perturbative(d, theta),
        (Method::SimpleLimit, Mode::Plus) if d.d_tilde == 0.0 => {
            Ok(eigen_minus_closed(&d.with_alpha(-d.alpha), theta))
        }
        (Method::SimpleLimit, _) if scheme.strict_paper_spectrum => {
            eigen_simple_limit_strict(mode, d, theta)
        }
        (Method::SimpleLimit, _) => eigen_simple_limit(mode, d, theta),
    }
}

/// `(C₊, C₋)` at one phase.
pub fn mode_costs(d: &DerivedParams, theta: f64, scheme: Scheme) -> Result<(f64, f64)> {
    let plus = cost_from_spectrum(&mode_spectrum(Mode::Plus, d, theta, scheme)?)?;
    let minus = cost_from_spectrum(&mode_spectrum(Mode::Minus, d, theta, scheme)?)?;
    Ok((plus, minus))
}

fn sample(
    d: &DerivedParams,
    theta: f64,
    scheme: Scheme,
    c_at_zero: f64,
) -> Result<ComplexitySample> {
    let (c_plus, c_minus) = mode_costs(d, theta, scheme)?;
    let c_total = c_plus + c_minus;
    Ok(ComplexitySample {
        theta,
        c_plus,
        c_minus,
        c_total,
        delta_c: if theta == 0.0 {
            0.0
        } else {
            c_total - c_at_zero
        },
    })
}

fn total_at_zero(d: &DerivedParams, scheme: Scheme) -> Result<f64> {
    let (p, m) = mode_costs(d, 0.0, scheme)?;
    Ok(p + m)
}

pub fn complexity_at(
    p: &ModelParams,
    theta: f64,
    scheme: impl Into<Scheme>,
) -> Result<ComplexitySample> {
    let scheme = scheme.into();
    let d = p.derive()?;
    let c0 = total_at_zero(&d, scheme)?;
    sample(&d, theta, scheme, c0)
}

/// Evaluates `grid` (sorted, deduplicated, with `θ = 0` inserted if absent).
pub fn curve(
    p: &ModelParams,
    theta_grid: &[f64],
    scheme: impl Into<Scheme>,
) -> Result<ComplexityCurve> {
    let scheme = scheme.into();
    let grid = normalize_grid(theta_grid)?;
    let d = p.derive()?;
    let c_at_zero = total_at_zero(&d, scheme)?;
    let samples = grid
        .par_iter()
        .map(|&theta| sample(&d, theta, scheme, c_at_zero))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexityCurve {
        params: *p,
        scheme,
        samples,
        c_at_zero,
    })
}

fn normalize_grid(theta_grid: &[f64]) -> Result<Vec<f64>> {
    if theta_grid.is_empty() || theta_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidGrid);
    }
    let mut grid: Vec<f64> = theta_grid
        .iter()
        .map(|&t| if t == 0.0 { 0.0 } else { t })
        .collect();
    grid.push(0.0);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

/// `samples` uniform points on `[0, theta_max]`.
pub fn uniform_grid(theta_max: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n)
            .map(|i| theta_max * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

pub fn default_grid() -> Vec<f64> {
    uniform_grid(DEFAULT_THETA_MAX, DEFAULT_SAMPLES)
}

/// Dimensionless input that a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Knob {
    BetaOmega,
    BetaOmegaRef,
    FieldRatio,
    LambdaRef,
}

impl Knob {
    pub const ALL: [Knob; 4] = [
        Knob::BetaOmega,
        Knob::BetaOmegaRef,
        Knob::FieldRatio,
        Knob::LambdaRef,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Knob::BetaOmega => "beta_omega",
            Knob::BetaOmegaRef => "beta_omega_ref",
            Knob::FieldRatio => "field_ratio",
            Knob::LambdaRef => "lambda_ref",
        }
    }

    /// Plot-legend symbol.
    pub fn symbol(self) -> &'static str {
        match self {
            Knob::BetaOmega => "βω",
            Knob::BetaOmegaRef => "βω_R",
            Knob::FieldRatio => "qE/Ω",
            Knob::LambdaRef => "λ_R",
        }
    }

    pub fn get(self, p: &ModelParams) -> f64 {
        match self {
            Knob::BetaOmega => p.beta_omega,
            Knob::BetaOmegaRef => p.beta_omega_ref,
            Knob::FieldRatio => p.field_ratio,
            Knob::LambdaRef => p.lambda_ref,
        }
    }

    pub fn set(self, p: &mut ModelParams, value: f64) {
        match self {
            Knob::BetaOmega => p.beta_omega = value,
            Knob::BetaOmegaRef => p.beta_omega_ref = value,
            Knob::FieldRatio => p.field_ratio = value,
            Knob::LambdaRef => p.lambda_ref = value,
        }
    }
}

impl fmt::Display for Knob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Knob {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('-', "_");
        Knob::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::InvalidKnob(s.to_string()))
    }
}

/// Parameter sets of the Cartesian product of the knob grids, first knob
/// outermost.
pub fn sweep_params<S: AsRef<str>>(
    base: &ModelParams,
    vary: &[(S, Vec<f64>)],
) -> Result<Vec<ModelParams>> {
    let knobs = vary
        .iter()
        .map(|(name, _)| name.as_ref().parse::<Knob>())
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![*base];
    for (knob, (_, values)) in knobs.iter().zip(vary) {
        out = out
            .iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = *p;
                    knob.set(&mut q, v);
                    q
                })
            })
            .collect();
    }
    for p in &out {
        p.validate()?;
    }
    Ok(out)
}

pub fn sweep<S: AsRef<str>>(
    base: &ModelParams,
    vary: &[(S, Vec<f64>)],
    theta_grid: &[f64],
    scheme: impl Into<Scheme>,
) -> Result<Vec<ComplexityCurve>> {
    let scheme = scheme.into();
    sweep_params(base, vary)?
        .par_iter()
        .map(|p| curve(p, theta_grid, scheme))
        .collect()
}
