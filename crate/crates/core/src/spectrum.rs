//! Relative covariance `Δ = G_T G_R⁻¹` and its eigenvalues.
//!
//! Four routes are provided:
//!
//! * [`eigen_minus_closed`]: the exact `{1, A ∓ √(A² − 1)}` spectrum of `Δ₋`;
//! * [`eigen_plus_numeric`] (and [`eigen_numeric`] for either mode): the
//!   characteristic cubic built from analytic invariants;
//! * [`eigen_plus_perturbative`]: the expansion of `Δ₊` to order `d̃²`;
//! * [`eigen_simple_limit`]: the `λ ≪ 1`, `d̃ ≪ 1` formulas.
//!
//! [`generic_eigenvalues`] is a general-purpose Schur-based solve used only as a
//! cross-check.

use std::fmt;
use std::str::FromStr;

use crate::cubic::characteristic_roots;
use crate::error::{Error, Result};
use crate::generators::{AffineMatrix3, Mode};
use crate::params::DerivedParams;
use crate::propagator::{reference_covariance, target_covariance};

/// Upper `λ` of the documented simple-limit window.
pub const SIMPLE_LIMIT_MAX_LAMBDA: f64 = 0.2;
/// Upper `d̃` of the documented simple-limit window.
pub const SIMPLE_LIMIT_MAX_D_TILDE: f64 = 0.1;
/// Perturbative denominators below this magnitude are rejected.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Numeric,
    Perturbative,
    SimpleLimit,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::ClosedForm,
        Method::Numeric,
        Method::Perturbative,
        Method::SimpleLimit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Numeric => "numeric",
            Method::Perturbative => "perturbative",
            Method::SimpleLimit => "simple-limit",
        }
    }

    /// Whether the spectra produced are exact (so `det Δ = 1` holds).
    pub fn is_exact(self) -> bool {
        matches!(self, Method::ClosedForm | Method::Numeric)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        match norm.as_str() {
            "closed-form" | "closed" | "closedform" => Ok(Method::ClosedForm),
            "numeric" => Ok(Method::Numeric),
            "perturbative" => Ok(Method::Perturbative),
            "simple-limit" | "simple" | "simplelimit" => Ok(Method::SimpleLimit),
            _ => Err(format!(
                "unknown method `{s}` (expected closed-form, numeric, perturbative or simple-limit)"
            )),
        }
    }
}

/// Three eigenvalues of `Δ₊` or `Δ₋`, ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeSpectrum {
    pub eigenvalues: [f64; 3],
    pub mode: Mode,
    pub method: Method,
}

impl RelativeSpectrum {
    fn new(mut eigenvalues: [f64; 3], mode: Mode, method: Method) -> Result<Self> {
        eigenvalues.sort_by(f64::total_cmp);
        if let Some(&bad) = eigenvalues.iter().find(|&&x| x.is_nan() || x <= 0.0) {
            return Err(Error::NonPositiveEigenvalue { value: bad });
        }
        Ok(Self {
            eigenvalues,
            mode,
            method,
        })
    }

    pub fn product(&self) -> f64 {
        self.eigenvalues.iter().product()
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[2]
    }
}

struct Trig {
    cos: f64,
    ch2: f64,
    sh2: f64,
}

impl Trig {
    fn new(alpha: f64, theta: f64) -> Self {
        Self {
            cos: theta.cos(),
            ch2: (2.0 * alpha).cosh(),
            sh2: (2.0 * alpha).sinh(),
        }
    }

    /// `cosh 2α − cos θ sinh 2α`
    fn minus(&self) -> f64 {
        self.ch2 - self.cos * self.sh2
    }

    /// `cosh 2α + cos θ sinh 2α`
    fn plus(&self) -> f64 {
        self.ch2 + self.cos * self.sh2
    }
}

/// `G_T±(θ) · G_R⁻¹`.
pub fn relative_covariance(mode: Mode, d: &DerivedParams, theta: f64) -> AffineMatrix3 {
    let g_t = target_covariance(mode, d, theta);
    let g_r = reference_covariance(d);
    // G_R is diagonal
    let mut delta = g_t;
    for j in 0..3 {
        let inv = 1.0 / g_r[(j, j)];
        for i in 0..3 {
            delta[(i, j)] *= inv;
        }
    }
    delta
}

/// The printed entry-by-entry form of `Δ±`.
pub fn relative_covariance_closed(mode: Mode, d: &DerivedParams, theta: f64) -> AffineMatrix3 {
    let t = Trig::new(d.alpha, theta);
    let s = theta.sin();
    let (lam, lr) = (d.lambda, d.lambda_ref);
    match mode {
        Mode::Minus => {
            let d21 = lr * s * t.sh2;
            AffineMatrix3::new(
                lr / lam * t.minus(),
                d21 / (lr * lr),
                0.0,
                d21,
                lam / lr * t.plus(),
                0.0,
                0.0,
                0.0,
                1.0,
            )
        }
        Mode::Plus => {
            let dt = d.d_tilde;
            let d21 = -lr * s * t.sh2;
            AffineMatrix3::new(
                lr / lam * (4.0 * dt * dt * lam + t.plus()),
                d21 / (lr * lr),
                std::f64::consts::SQRT_2 * dt,
                d21,
                lam / lr * t.minus(),
                0.0,
                2.0 * std::f64::consts::SQRT_2 * dt * lr,
                0.0,
                1.0,
            )
        }
    }
}

/// `A = ((λ² + λ_R²) cosh 2α + (λ² − λ_R²) cos θ sinh 2α) / (2λλ_R)`.
pub fn scalar_a(d: &DerivedParams, theta: f64) -> f64 {
    let t = Trig::new(d.alpha, theta);
    let (lam, lr) = (d.lambda, d.lambda_ref);
    ((lam * lam + lr * lr) * t.ch2 + (lam * lam - lr * lr) * t.cos * t.sh2) / (2.0 * lam * lr)
}

/// `A ∓ √(A² − 1)`, with the small root taken as the reciprocal.
fn reciprocal_pair(a: f64) -> (f64, f64) {
    let big = a + (a * a - 1.0).max(0.0).sqrt();
    (1.0 / big, big)
}

pub fn eigen_minus_closed(d: &DerivedParams, theta: f64) -> RelativeSpectrum {
    let (small, big) = reciprocal_pair(scalar_a(d, theta));
    RelativeSpectrum {
        eigenvalues: [small, 1.0, big],
        mode: Mode::Minus,
        method: Method::ClosedForm,
    }
}

/// Trace and principal-minor sum of `Δ±`, simplified so that every term is
/// non-negative. `det Δ± = 1` in both modes.
pub fn invariants(mode: Mode, d: &DerivedParams, theta: f64) -> (f64, f64) {
    let t = Trig::new(d.alpha, theta);
    let (lam, lr) = (d.lambda, d.lambda_ref);
    match mode {
        Mode::Minus => {
            let s = lr / lam * t.minus() + lam / lr * t.plus();
            (1.0 + s, 1.0 + s)
        }
        Mode::Plus => {
            let dt2 = d.d_tilde * d.d_tilde;
            let s = lr / lam * t.plus() + lam / lr * t.minus();
            (
                1.0 + 4.0 * dt2 * lr + s,
                1.0 + 4.0 * dt2 * lam * t.minus() + s,
            )
        }
    }
}

pub fn eigen_numeric(mode: Mode, d: &DerivedParams, theta: f64) -> Result<RelativeSpectrum> {
    let (trace, minors) = invariants(mode, d, theta);
    let roots = characteristic_roots(trace, minors, 1.0)?;
    RelativeSpectrum::new(roots, mode, Method::Numeric)
}

pub fn eigen_plus_numeric(d: &DerivedParams, theta: f64) -> Result<RelativeSpectrum> {
    eigen_numeric(Mode::Plus, d, theta)
}

/// Shared denominator of the first-order corrections.
pub fn perturbative_denominator(d: &DerivedParams, theta: f64) -> f64 {
    let t = Trig::new(d.alpha, theta);
    let (lam, lr) = (d.lambda, d.lambda_ref);
    (lam * lam + lr * lr) * t.ch2 + (lr * lr - lam * lam) * t.cos * t.sh2 - 2.0 * lam * lr
}

/// Zeroth- and first-order coefficients `(Δ⁽ⁱ⁾₀, Δ⁽ⁱ⁾₁)` in the printed order
/// `i = 1, 2, 3` (the unit eigenvalue first, then `A' ∓ √(A'² − 1)`).
pub fn perturbative_coefficients(d: &DerivedParams, theta: f64) -> Result<([f64; 3], [f64; 3])> {
    let t = Trig::new(d.alpha, theta);
    let (lam, lr) = (d.lambda, d.lambda_ref);
    let denom = perturbative_denominator(d, theta);
    if denom.abs() < DEGENERATE_DENOMINATOR || !denom.is_finite() {
        return Err(Error::DegenerateDenominator { value: denom });
    }
    let (small, big) = reciprocal_pair(scalar_a(&d.with_alpha(-d.alpha), theta));
    let zeroth = [1.0, small, big];
    let first_unit = 4.0 * lam * lr * (lam * t.ch2 - lam * t.cos * t.sh2 - lr) / denom;
    let first =
        |z0: f64| (4.0 * lr.powi(3) * t.plus() * z0 - 4.0 * lr * lr * lam) / denom / (1.0 + z0);
    Ok((zeroth, [first_unit, first(small), first(big)]))
}

pub fn eigen_plus_perturbative(d: &DerivedParams, theta: f64) -> Result<RelativeSpectrum> {
    let (zeroth, first) = perturbative_coefficients(d, theta)?;
    let dt2 = d.d_tilde * d.d_tilde;
    let values = [0, 1, 2].map(|i| zeroth[i] + first[i] * dt2);
    RelativeSpectrum::new(values, Mode::Plus, Method::Perturbative)
}

/// True when `(λ, d̃)` lies inside the documented simple-limit window.
pub fn in_simple_limit_window(d: &DerivedParams) -> bool {
    d.lambda <= SIMPLE_LIMIT_MAX_LAMBDA && d.d_tilde <= SIMPLE_LIMIT_MAX_D_TILDE
}

/// Simple-limit spectrum, with the reciprocal partner `1/r` of the `−` mode.
pub fn eigen_simple_limit(mode: Mode, d: &DerivedParams, theta: f64) -> Result<RelativeSpectrum> {
    simple_limit(mode, d, theta, false)
}

/// Simple-limit spectrum restricted to the listed eigenvalues; the missing
/// `−` eigenvalue is represented as 1 so it contributes no cost.
pub fn eigen_simple_limit_strict(
    mode: Mode,
    d: &DerivedParams,
    theta: f64,
) -> Result<RelativeSpectrum> {
    simple_limit(mode, d, theta, true)
}

fn simple_limit(
    mode: Mode,
    d: &DerivedParams,
    theta: f64,
    strict: bool,
) -> Result<RelativeSpectrum> {
    if !in_simple_limit_window(d) {
        log::warn!(
            "simple-limit spectrum evaluated outside its window (lambda = {}, d_tilde = {})",
            d.lambda,
            d.d_tilde
        );
    }
    let t = Trig::new(d.alpha, theta);
    let ratio = d.lambda_ref / d.lambda;
    let values = match mode {
        Mode::Minus => {
            let r = ratio * t.minus();
            if strict {
                [1.0, 1.0, r]
            } else {
                [1.0, 1.0 / r, r]
            }
        }
        Mode::Plus => {
            if d.d_tilde == 0.0 {
                return Err(Error::ZeroEigenvalue { d_tilde: d.d_tilde });
            }
            let shift = 4.0 * d.d_tilde * d.d_tilde * d.lambda_ref;
            [1.0, shift, shift + ratio * t.plus()]
        }
    };
    RelativeSpectrum::new(values, mode, Method::SimpleLimit)
}

/// General-purpose eigenvalues (real parts, ascending) of an arbitrary 3×3.
pub fn generic_eigenvalues(m: &AffineMatrix3) -> [f64; 3] {
    let ev = m.complex_eigenvalues();
    let mut out = [ev[0].re, ev[1].re, ev[2].re];
    out.sort_by(f64::total_cmp);
    out
}
