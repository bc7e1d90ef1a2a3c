//! Phase-space generators of the two decoupled oscillator modes.
//!
//! Matrices act on the affine basis `(x g_s, p / g_s, 1)`; the third slot
//! carries first moments and displacements. Time enters only through the
//! phase `θ = ωt`.

use nalgebra::Matrix3;

use crate::params::DerivedParams;

/// 3×3 real matrix over `(x, p, 1)`, row-major.
pub type AffineMatrix3 = Matrix3<f64>;

/// Selects the diagonal combination `x₊` or `x₋` of the left/right copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Plus,
    Minus,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Plus, Mode::Minus];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Plus => "plus",
            Mode::Minus => "minus",
        }
    }
}

pub fn symplectic_form() -> AffineMatrix3 {
    Matrix3::new(0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
}

/// Symmetric gate matrix `k_ab` of the quadratic generator for `mode`.
pub fn gate_generator(mode: Mode, d: &DerivedParams, theta: f64) -> AffineMatrix3 {
    let (s, c) = theta.sin_cos();
    let lam = d.lambda;
    let a = d.alpha;
    match mode {
        Mode::Minus => -a * Matrix3::new(lam * s, c, 0.0, c, -s / lam, 0.0, 0.0, 0.0, 0.0),
        Mode::Plus => {
            let r = std::f64::consts::SQRT_2 * d.d_tilde;
            -a * Matrix3::new(
                -lam * s,
                -c,
                r * lam * s,
                -c,
                s / lam,
                r * c,
                r * lam * s,
                r * c,
                -2.0 * d.d_tilde * d.d_tilde * lam * s,
            )
        }
    }
}

/// `K = Ω · k`, written out entry by entry.
pub fn evolution_generator(mode: Mode, d: &DerivedParams, theta: f64) -> AffineMatrix3 {
    let (s, c) = theta.sin_cos();
    let lam = d.lambda;
    let a = d.alpha;
    match mode {
        Mode::Minus => -a * Matrix3::new(c, -s / lam, 0.0, -lam * s, -c, 0.0, 0.0, 0.0, 0.0),
        Mode::Plus => {
            let r = std::f64::consts::SQRT_2 * d.d_tilde;
            -a * Matrix3::new(-c, s / lam, r * c, lam * s, c, -r * lam * s, 0.0, 0.0, 0.0)
        }
    }
}
