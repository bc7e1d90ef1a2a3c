//! Normal-ordered form of `exp(α₊K₊ + α₋K₋ + α₀K₀)` in SU(1,1) and the
//! Gaussian wavefunction of the squeezed two-mode state.
//!
//! ```text
//! exp(α₊K₊ + α₋K₋ + α₀K₀) = exp(γ₊K₊) · exp(log γ₀ · K₀) · exp(γ₋K₋)
//! γ± = 2α± sinh Θ / (2Θ cosh Θ − α₀ sinh Θ)
//! γ₀ = (cosh Θ − (α₀ / 2Θ) sinh Θ)⁻²,   Θ² = α₀²/4 − α₊α₋
//! ```
//!
//! Both `cosh Θ` and `sinh Θ / Θ` are even in `Θ`, so the coefficients only
//! depend on `Θ²`; a negative `Θ²` is evaluated through `cos` and `sin`.

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::linalg::{expm_taylor, max_abs_diff};
use crate::params::DerivedParams;

const SINGULAR_TOLERANCE: f64 = 1e-12;

/// `Θ`, which is either real or purely imaginary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Theta {
    Real(f64),
    /// `Θ = i · magnitude`.
    Imaginary(f64),
}

impl Theta {
    fn from_square(sq: f64) -> Self {
        if sq >= 0.0 {
            Theta::Real(sq.sqrt())
        } else {
            Theta::Imaginary((-sq).sqrt())
        }
    }

    pub fn squared(self) -> f64 {
        match self {
            Theta::Real(t) => t * t,
            Theta::Imaginary(t) => -t * t,
        }
    }

    /// `(cosh Θ, sinh Θ / Θ)`.
    fn even_parts(self) -> (f64, f64) {
        match self {
            Theta::Real(t) => (t.cosh(), sinhc(t)),
            Theta::Imaginary(t) => (t.cos(), sinc(t)),
        }
    }
}

fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU11Coefficients {
    pub gamma_plus: f64,
    pub gamma_zero: f64,
    pub gamma_minus: f64,
    pub theta: Theta,
}

/// Exponent `α₊K₊ + α₋K₋ + α₀K₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU11Exponent {
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub alpha_zero: f64,
}

impl SU11Exponent {
    pub fn new(alpha_plus: f64, alpha_minus: f64, alpha_zero: f64) -> Self {
        Self {
            alpha_plus,
            alpha_minus,
            alpha_zero,
        }
    }

    /// `α(K₊ − K₋)`, the two-mode squeeze.
    pub fn squeeze(alpha: f64) -> Self {
        Self::new(alpha, -alpha, 0.0)
    }
}

pub fn decompose(alpha_plus: f64, alpha_minus: f64, alpha_zero: f64) -> Result<SU11Coefficients> {
    let theta = Theta::from_square(0.25 * alpha_zero * alpha_zero - alpha_plus * alpha_minus);
    let (ch, shc) = theta.even_parts();
    // (2Θ cosh Θ − α₀ sinh Θ) / Θ
    let denom = 2.0 * ch - alpha_zero * shc;
    if denom.abs() < SINGULAR_TOLERANCE || !denom.is_finite() {
        return Err(Error::SingularDecomposition { value: denom });
    }
    let root = ch - 0.5 * alpha_zero * shc;
    Ok(SU11Coefficients {
        gamma_plus: 2.0 * alpha_plus * shc / denom,
        gamma_zero: root.powi(-2),
        gamma_minus: 2.0 * alpha_minus * shc / denom,
        theta,
    })
}

pub fn decompose_exponent(e: &SU11Exponent) -> Result<SU11Coefficients> {
    decompose(e.alpha_plus, e.alpha_minus, e.alpha_zero)
}

/// Generators in the two-dimensional (non-unitary) representation.
pub fn fundamental_generators() -> [Matrix2<f64>; 3] {
    [
        Matrix2::new(0.0, 1.0, 0.0, 0.0),
        Matrix2::new(0.0, 0.0, -1.0, 0.0),
        Matrix2::new(0.5, 0.0, 0.0, -0.5),
    ]
}

/// Largest entry of `exp(α·K) − exp(γ₊K₊) exp(log γ₀ K₀) exp(γ₋K₋)` in the
/// fundamental representation, all exponentials via the series.
pub fn verify_in_fundamental_rep(c: &SU11Coefficients, inputs: &SU11Exponent) -> f64 {
    let [kp, km, k0] = fundamental_generators();
    let lhs =
        expm_taylor(&(kp * inputs.alpha_plus + km * inputs.alpha_minus + k0 * inputs.alpha_zero));
    let rhs = expm_taylor(&(kp * c.gamma_plus))
        * expm_taylor(&(k0 * c.gamma_zero.ln()))
        * expm_taylor(&(km * c.gamma_minus));
    max_abs_diff(&lhs, &rhs)
}

/// Coefficients of the unnormalized Gaussian `Ψ_TFD`.
///
/// In the diagonal coordinates `Ψ ≃ exp(−½(w₊ x₊² + w₋ x₋²))`; in the
/// left/right coordinates, with `u = x − d`,
/// `Ψ ≃ exp(−½(c_diag (u_L² + u_R²) + 2 c_cross u_L u_R))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWavefunction {
    pub width_plus: f64,
    pub width_minus: f64,
    pub c_diag: f64,
    pub c_cross: f64,
    /// Center `d` of both copies, in the same length units as `mω`.
    pub center: f64,
}

impl GaussianWavefunction {
    /// `(c_diag, c_cross)` rebuilt from the diagonal widths by the rotation
    /// `x± = (u_L ± u_R)/√2`.
    pub fn rotated_widths(&self) -> (f64, f64) {
        (
            0.5 * (self.width_plus + self.width_minus),
            0.5 * (self.width_plus - self.width_minus),
        )
    }

    /// Covariance entry `⟨{x g_s, x g_s}⟩ = g_s² / w` of a mode with width `w`.
    pub fn position_covariance(width: f64, gate_scale: f64) -> f64 {
        gate_scale * gate_scale / width
    }
}

pub fn tfd_wavefunction(d: &DerivedParams, m_omega: f64) -> GaussianWavefunction {
    let a2 = 2.0 * d.alpha;
    // g_s² = mω / λ, so d = d̃ / g_s = d̃ √(λ / mω)
    let center = d.d_tilde * (d.lambda / m_omega).sqrt();
    GaussianWavefunction {
        width_plus: m_omega * (-a2).exp(),
        width_minus: m_omega * a2.exp(),
        c_diag: m_omega * a2.cosh(),
        c_cross: -m_omega * a2.sinh(),
        center,
    }
}
