//! Physical and dimensionless parameters of the driven oscillator.
//!
//! The canonical inputs are the four dimensionless knobs of [`ModelParams`]:
//! `βω`, `βω_R`, `qE/Ω` (with `Ω = ω g_s`) and `λ_R`. Everything the matrix
//! layer needs is collected in [`DerivedParams`]. Target and reference share
//! `m`, `g_s` and `β`, so `λ = λ_R · βω / βω_R`.
//!
//! Only the magnitude of the field enters: flipping the sign of `E` maps
//! `d̃ → −d̃`, and the spectrum of the relative covariance depends on `d̃²`.

use crate::error::{Error, Result};

/// Largest `βω` for which `α` is evaluated; above it `α` is clamped to zero.
pub const BETA_OMEGA_MAX: f64 = 700.0;

/// Oscillator in dimensionful units (`ħ = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalOscillator {
    pub mass: f64,
    pub omega: f64,
    pub omega_ref: f64,
    pub charge: f64,
    pub field: f64,
    pub gate_scale: f64,
    pub beta: f64,
}

impl PhysicalOscillator {
    pub fn validate(&self) -> Result<()> {
        positive("mass", self.mass)?;
        positive("omega", self.omega)?;
        positive("omega_ref", self.omega_ref)?;
        positive("gate_scale", self.gate_scale)?;
        positive("beta", self.beta)?;
        finite("charge", self.charge)?;
        finite("field", self.field)?;
        Ok(())
    }

    /// Equilibrium shift `d = qE / (mω²)`.
    pub fn displacement(&self) -> f64 {
        self.charge * self.field / (self.mass * self.omega * self.omega)
    }

    /// Energy shift `ℰ = q²E² / (2mω²)`.
    pub fn energy_shift(&self) -> f64 {
        let qe = self.charge * self.field;
        qe * qe / (2.0 * self.mass * self.omega * self.omega)
    }

    pub fn lambda(&self) -> f64 {
        self.mass * self.omega / (self.gate_scale * self.gate_scale)
    }

    pub fn lambda_ref(&self) -> f64 {
        self.mass * self.omega_ref / (self.gate_scale * self.gate_scale)
    }
}

/// The four dimensionless knobs that fix every curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub beta_omega: f64,
    pub beta_omega_ref: f64,
    pub field_ratio: f64,
    pub lambda_ref: f64,
}

impl ModelParams {
    pub fn new(
        beta_omega: f64,
        beta_omega_ref: f64,
        field_ratio: f64,
        lambda_ref: f64,
    ) -> Result<Self> {
        let p = Self {
            beta_omega,
            beta_omega_ref,
            field_ratio,
            lambda_ref,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        positive("beta_omega", self.beta_omega)?;
        positive("beta_omega_ref", self.beta_omega_ref)?;
        positive("lambda_ref", self.lambda_ref)?;
        finite("field_ratio", self.field_ratio)?;
        if self.field_ratio < 0.0 {
            return Err(Error::InvalidParameter {
                name: "field_ratio",
                value: self.field_ratio,
                reason: "must be >= 0; the sign of E does not affect complexity",
            });
        }
        Ok(())
    }

    pub fn derive(&self) -> Result<DerivedParams> {
        derive(self)
    }
}

/// Quantities consumed by the matrix layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Two-mode squeezing parameter `α`.
    pub alpha: f64,
    /// `λ = mω / g_s²`.
    pub lambda: f64,
    /// `λ_R = mω_R / g_s²`.
    pub lambda_ref: f64,
    /// `d̃ = g_s d`.
    pub d_tilde: f64,
    /// Set when `βω` exceeded [`BETA_OMEGA_MAX`] and `α` was clamped to zero.
    pub alpha_clamped: bool,
}

impl DerivedParams {
    /// Builds derived parameters directly, bypassing the knob layer.
    pub fn new(alpha: f64, lambda: f64, lambda_ref: f64, d_tilde: f64) -> Self {
        Self {
            alpha,
            lambda,
            lambda_ref,
            d_tilde,
            alpha_clamped: false,
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }

    pub fn with_d_tilde(self, d_tilde: f64) -> Self {
        Self { d_tilde, ..self }
    }

    /// True when reference and target states coincide.
    pub fn is_trivial(&self) -> bool {
        self.alpha == 0.0 && self.d_tilde == 0.0 && self.lambda == self.lambda_ref
    }
}

/// `α = arccosh(1/√(1 − e^{−βω}))`.
///
/// Evaluated as `½ ln((1 + t)/(1 − t))` with `t = e^{−βω/2}` (so `tanh α = t`),
/// which keeps full relative precision at both ends of the `βω` range.
pub fn squeezing_parameter(beta_omega: f64) -> Result<f64> {
    let gap = -(-beta_omega).exp_m1();
    if gap.is_nan() || gap <= 0.0 || !gap.is_finite() {
        return Err(Error::NonFiniteParameter {
            what: "1 - exp(-beta_omega)",
        });
    }
    let t = (-0.5 * beta_omega).exp();
    let one_minus_t = -(-0.5 * beta_omega).exp_m1();
    let alpha = 0.5 * (t.ln_1p() - one_minus_t.ln());
    if !alpha.is_finite() {
        return Err(Error::NonFiniteParameter { what: "alpha" });
    }
    Ok(alpha)
}

pub fn derive(p: &ModelParams) -> Result<DerivedParams> {
    p.validate()?;
    let (alpha, alpha_clamped) = if p.beta_omega > BETA_OMEGA_MAX {
        log::warn!(
            "beta_omega = {} exceeds {BETA_OMEGA_MAX}; clamping alpha to 0",
            p.beta_omega
        );
        (0.0, true)
    } else {
        (squeezing_parameter(p.beta_omega)?, false)
    };
    let lambda = p.lambda_ref * p.beta_omega / p.beta_omega_ref;
    Ok(DerivedParams {
        alpha,
        lambda,
        lambda_ref: p.lambda_ref,
        d_tilde: p.field_ratio / lambda,
        alpha_clamped,
    })
}

/// Maps a dimensionful oscillator onto the knob set and its derived values.
pub fn from_physical(o: &PhysicalOscillator) -> Result<(ModelParams, DerivedParams)> {
    o.validate()?;
    let params = ModelParams::new(
        o.beta * o.omega,
        o.beta * o.omega_ref,
        (o.charge * o.field).abs() / (o.omega * o.gate_scale),
        o.lambda_ref(),
    )?;
    let (alpha, alpha_clamped) = if params.beta_omega > BETA_OMEGA_MAX {
        (0.0, true)
    } else {
        (squeezing_parameter(params.beta_omega)?, false)
    };
    let derived = DerivedParams {
        alpha,
        lambda: o.lambda(),
        lambda_ref: o.lambda_ref(),
        d_tilde: o.gate_scale * o.displacement().abs(),
        alpha_clamped,
    };
    Ok((params, derived))
}

/// `Z = e^{βℰ} / (e^{βω/2} − e^{−βω/2})`, evaluated in log space.
pub fn partition_function(beta: f64, omega: f64, energy_shift: f64) -> Result<f64> {
    positive("beta", beta)?;
    positive("omega", omega)?;
    finite("energy_shift", energy_shift)?;
    let x = 0.5 * beta * omega;
    // ln(2 sinh x) = x + ln(1 - e^{-2x})
    let log_denominator = x + (-(-2.0 * x).exp_m1()).ln();
    let z = (beta * energy_shift - log_denominator).exp();
    if !z.is_finite() {
        return Err(Error::NonFiniteParameter {
            what: "partition function",
        });
    }
    Ok(z)
}

/// `ℰ_n = ω(n + ½) − ℰ`.
pub fn energy_level(n: u64, omega: f64, energy_shift: f64) -> f64 {
    omega * (n as f64 + 0.5) - energy_shift
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn alpha_vanishes_at_large_gap() {
        let d = ModelParams::new(700.0, 10.0, 0.0, 1.0)
            .unwrap()
            .derive()
            .unwrap();
        assert!(d.alpha.abs() < 1e-12);
        assert!(!d.alpha_clamped);
    }

    #[test]
    fn alpha_clamped_beyond_guard() {
        let d = ModelParams::new(701.0, 10.0, 0.0, 1.0)
            .unwrap()
            .derive()
            .unwrap();
        assert_eq!(d.alpha, 0.0);
        assert!(d.alpha_clamped);
    }

    #[test]
    fn ln4_anchor() {
        let d = ModelParams::new(4f64.ln(), 10.0, 0.0, 1.0)
            .unwrap()
            .derive()
            .unwrap();
        // tanh α = 1/2  ⇒  α = ½ ln 3
        assert_relative_eq!(d.alpha, 0.5 * 3f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(d.alpha, 0.549_306_144_334_054_8, max_relative = 1e-14);
        assert_relative_eq!(d.lambda, 0.138_629_436_111_989_06, max_relative = 1e-14);
        assert_eq!(d.d_tilde, 0.0);
    }

    #[test]
    fn d_tilde_from_field_ratio() {
        let d = ModelParams::new(1.0, 10.0, 0.01, 1.0)
            .unwrap()
            .derive()
            .unwrap();
        assert_relative_eq!(d.lambda, 0.1, max_relative = 1e-15);
        assert_relative_eq!(d.d_tilde, 0.1, max_relative = 1e-14);
    }

    #[test]
    fn matches_arccosh_definition() {
        for bw in [1e-6f64, 0.1, 0.5, 1.0, 2.0, 10.0] {
            let direct = (1.0 / (-(-bw).exp_m1()).sqrt()).acosh();
            let a = squeezing_parameter(bw).unwrap();
            assert_relative_eq!(a, direct, max_relative = 1e-9);
        }
        // arccosh(1 + ε) loses digits here; compare tanh α = e^{-βω/2} instead
        for bw in [30.0f64, 100.0, 600.0] {
            let a = squeezing_parameter(bw).unwrap();
            assert_relative_eq!(a.tanh(), (-0.5 * bw).exp(), max_relative = 1e-14);
        }
    }

    #[test]
    fn rejects_invalid_knobs() {
        assert!(ModelParams::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, -1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, -0.1, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0, 0.0, 1.0).is_err());
    }

    fn unit_oscillator() -> PhysicalOscillator {
        PhysicalOscillator {
            mass: 1.0,
            omega: 1.0,
            omega_ref: 1.0,
            charge: 1.0,
            field: 0.0,
            gate_scale: 1.0,
            beta: 1.0,
        }
    }

    #[test]
    fn zero_field_has_no_shift() {
        let o = unit_oscillator();
        assert_eq!(o.displacement(), 0.0);
        assert_eq!(o.energy_shift(), 0.0);
        let (p, _) = from_physical(&o).unwrap();
        assert_eq!(p.field_ratio, 0.0);
    }

    #[test]
    fn displacement_and_shift() {
        let o = PhysicalOscillator {
            field: 2.0,
            ..unit_oscillator()
        };
        assert_eq!(o.displacement(), 2.0);
        assert_eq!(o.energy_shift(), 2.0);
    }

    #[test]
    fn identity_scales() {
        let (p, d) = from_physical(&unit_oscillator()).unwrap();
        assert_eq!(d.lambda, 1.0);
        assert_eq!(d.lambda_ref, 1.0);
        assert_eq!(p.lambda_ref, 1.0);
    }

    #[test]
    fn partition_function_values() {
        let z = partition_function(4f64.ln(), 1.0, 0.0).unwrap();
        assert_relative_eq!(z, 2.0 / 3.0, max_relative = 1e-14);
        let z = partition_function(1.0, 1.0, 1.0).unwrap();
        let e = std::f64::consts::E;
        assert_relative_eq!(z, e / (e.sqrt() - 1.0 / e.sqrt()), max_relative = 1e-14);
        assert_relative_eq!(z, 2.608_238_646_367_6, max_relative = 1e-12);
        assert!(partition_function(1e4, 1.0, 0.0).unwrap() < 1e-300);
        assert!(partition_function(1.0, 1.0, 1e4).is_err());
    }

    #[test]
    fn energy_levels() {
        assert_eq!(energy_level(0, 1.0, 0.0), 0.5);
        assert_eq!(energy_level(3, 2.0, 0.0), 7.0);
        assert_eq!(energy_level(0, 1.0, 2.0), -1.5);
    }

    fn knobs() -> impl Strategy<Value = ModelParams> {
        (0.01f64..50.0, 0.01f64..50.0, 0.0f64..5.0, 0.05f64..20.0)
            .prop_map(|(bw, bwr, fr, lr)| ModelParams::new(bw, bwr, fr, lr).unwrap())
    }

    proptest! {
        #[test]
        fn cosh_squared_identity(p in knobs()) {
            let d = p.derive().unwrap();
            let lhs = d.alpha.cosh().powi(2) * (-(-p.beta_omega).exp_m1());
            prop_assert!((lhs - 1.0).abs() < 1e-10);
            prop_assert!((d.alpha.tanh() - (-0.5 * p.beta_omega).exp()).abs() < 1e-12);
            prop_assert!((d.d_tilde * d.lambda - p.field_ratio).abs() < 1e-12);
        }

        #[test]
        fn physical_round_trip(
            mass in 0.1f64..10.0, omega in 0.1f64..10.0, omega_ref in 0.1f64..10.0,
            qe in -3.0f64..3.0, gs in 0.2f64..5.0, beta in 0.1f64..5.0,
        ) {
            let o = PhysicalOscillator { mass, omega, omega_ref, charge: 1.0, field: qe, gate_scale: gs, beta };
            let (p, d) = from_physical(&o).unwrap();
            let again = p.derive().unwrap();
            prop_assert!((again.alpha - d.alpha).abs() < 1e-12);
            prop_assert!((again.lambda - d.lambda).abs() <= 1e-12 * d.lambda.max(1.0));
            prop_assert!((again.lambda_ref - d.lambda_ref).abs() <= 1e-12 * d.lambda_ref.max(1.0));
            prop_assert!((again.d_tilde - d.d_tilde).abs() <= 1e-12 * d.d_tilde.max(1.0));
            let energy = o.energy_shift();
            prop_assert!((energy - 0.5 * mass * omega * omega * o.displacement().powi(2)).abs() <= 1e-12 * energy.max(1.0));
        }

        #[test]
        fn level_gap_is_omega(n in 0u64..10_000, omega in 0.01f64..100.0, shift in -50.0f64..50.0) {
            let gap = energy_level(n + 1, omega, shift) - energy_level(n, omega, shift);
            prop_assert!((gap - omega).abs() <= 1e-12 * (omega * n as f64).max(shift.abs()).max(1.0));
        }

        #[test]
        fn partition_shift_factorizes(beta in 0.01f64..10.0, omega in 0.01f64..10.0, shift in -5.0f64..5.0) {
            let z = partition_function(beta, omega, shift).unwrap();
            let z0 = partition_function(beta, omega, 0.0).unwrap();
            let expected = (beta * shift).exp() * z0;
            prop_assert!(((z - expected) / expected).abs() < 1e-12);
        }
    }
}
