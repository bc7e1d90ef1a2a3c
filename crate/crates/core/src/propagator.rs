//! Circuit unitaries and the covariance matrices they act on.
//!
//! Covariance matrices use the affine convention `G = ⟨ξξᵀ + ξξᵀ⟩` with
//! `ξ = (x, p, 1)`, so the `(3,3)` slot is always 2 and the third column
//! carries twice the first moments.

use nalgebra::Matrix3;

use crate::generators::{evolution_generator, AffineMatrix3, Mode};
use crate::linalg::expm_taylor;
use crate::params::DerivedParams;

/// Target (or reference) covariances of both modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovariancePair {
    pub plus: AffineMatrix3,
    pub minus: AffineMatrix3,
}

impl CovariancePair {
    pub fn get(&self, mode: Mode) -> &AffineMatrix3 {
        match mode {
            Mode::Plus => &self.plus,
            Mode::Minus => &self.minus,
        }
    }
}

/// Numerical `e^K` for a generator with a vanishing third row.
pub fn affine_expm(k: &AffineMatrix3) -> AffineMatrix3 {
    let mut u = expm_taylor(k);
    u[(2, 0)] = 0.0;
    u[(2, 1)] = 0.0;
    u[(2, 2)] = 1.0;
    u
}

/// Closed-form `U±(1) = exp(K±)`.
pub fn circuit_unitary(mode: Mode, d: &DerivedParams, theta: f64) -> AffineMatrix3 {
    let (s, c) = theta.sin_cos();
    let (sh, ch) = (d.alpha.sinh(), d.alpha.cosh());
    let lam = d.lambda;
    match mode {
        Mode::Minus => Matrix3::new(
            ch - c * sh,
            s * sh / lam,
            0.0,
            lam * s * sh,
            ch + c * sh,
            0.0,
            0.0,
            0.0,
            1.0,
        ),
        Mode::Plus => {
            let r = std::f64::consts::SQRT_2 * d.d_tilde;
            Matrix3::new(
                ch + c * sh,
                -s * sh / lam,
                r * (1.0 - ch - c * sh),
                -lam * s * sh,
                ch - c * sh,
                r * lam * s * sh,
                0.0,
                0.0,
                1.0,
            )
        }
    }
}

/// Numerical route to the same unitary, through [`affine_expm`].
pub fn circuit_unitary_numeric(mode: Mode, d: &DerivedParams, theta: f64) -> AffineMatrix3 {
    affine_expm(&evolution_generator(mode, d, theta))
}

pub fn vacuum_covariance(mode: Mode, d: &DerivedParams) -> AffineMatrix3 {
    let lam = d.lambda;
    match mode {
        Mode::Minus => Matrix3::from_diagonal(&[1.0 / lam, lam, 2.0].into()),
        Mode::Plus => {
            let dt = d.d_tilde;
            let m = 2.0 * std::f64::consts::SQRT_2 * dt;
            Matrix3::new(
                4.0 * dt * dt + 1.0 / lam,
                0.0,
                m,
                0.0,
                lam,
                0.0,
                m,
                0.0,
                2.0,
            )
        }
    }
}

/// Reference state covariance, shared by both modes.
pub fn reference_covariance(d: &DerivedParams) -> AffineMatrix3 {
    let lr = d.lambda_ref;
    Matrix3::from_diagonal(&[1.0 / lr, lr, 2.0].into())
}

/// `G → U G Uᵀ`.
pub fn conjugate(u: &AffineMatrix3, g: &AffineMatrix3) -> AffineMatrix3 {
    u * g * u.transpose()
}

/// Closed-form target covariance `G_T±(θ)`.
pub fn target_covariance(mode: Mode, d: &DerivedParams, theta: f64) -> AffineMatrix3 {
    let (s, c) = theta.sin_cos();
    let (sh2, ch2) = ((2.0 * d.alpha).sinh(), (2.0 * d.alpha).cosh());
    let lam = d.lambda;
    match mode {
        Mode::Minus => {
            let g12 = s * sh2;
            Matrix3::new(
                (ch2 - c * sh2) / lam,
                g12,
                0.0,
                g12,
                lam * (ch2 + c * sh2),
                0.0,
                0.0,
                0.0,
                2.0,
            )
        }
        Mode::Plus => {
            let dt = d.d_tilde;
            let m = 2.0 * std::f64::consts::SQRT_2 * dt;
            let g12 = -s * sh2;
            Matrix3::new(
                (4.0 * dt * dt * lam + ch2 + c * sh2) / lam,
                g12,
                m,
                g12,
                lam * (ch2 - c * sh2),
                0.0,
                m,
                0.0,
                2.0,
            )
        }
    }
}

pub fn target_pair(d: &DerivedParams, theta: f64) -> CovariancePair {
    CovariancePair {
        plus: target_covariance(Mode::Plus, d, theta),
        minus: target_covariance(Mode::Minus, d, theta),
    }
}

/// Leading-minor test on the upper 2×2 block.
pub fn block_positive_definite(g: &AffineMatrix3) -> bool {
    g[(0, 0)] > 0.0 && g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)] > 0.0
}
