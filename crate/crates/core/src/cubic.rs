//! Real roots of a 3×3 characteristic polynomial.
//!
//! `μ³ − T μ² + M μ − D = 0`, where `T` is the trace, `M` the sum of the
//! principal 2×2 minors and `D` the determinant. The largest root comes from
//! the trigonometric form of the depressed cubic; the remaining pair is
//! recovered from Vieta's relations so that small roots keep their relative
//! accuracy even when the spread is many orders of magnitude.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Allowed overshoot of the cosine argument (or the quadratic discriminant)
/// before the roots are declared complex.
pub const COMPLEX_TOLERANCE: f64 = 1e-9;

/// `|p|` below this fraction of `T²/3` is treated as a triple root.
const REPEATED_TOLERANCE: f64 = 1e-14;

/// Returns the three real roots in ascending order.
pub fn characteristic_roots(trace: f64, minor_sum: f64, det: f64) -> Result<[f64; 3]> {
    if !(trace.is_finite() && minor_sum.is_finite() && det.is_finite()) {
        return Err(Error::NonFiniteParameter {
            what: "characteristic polynomial coefficients",
        });
    }
    let shift = trace / 3.0;
    let p = minor_sum - trace * trace / 3.0;
    let q = -2.0 * trace.powi(3) / 27.0 + trace * minor_sum / 3.0 - det;
    let scale = (trace * trace / 3.0)
        .max(minor_sum.abs())
        .max(f64::MIN_POSITIVE);

    let largest = if p.abs() <= REPEATED_TOLERANCE * scale {
        // (t³ + q = 0) with p ≈ 0
        shift + (-q).cbrt()
    } else if p > 0.0 {
        return Err(Error::ComplexSpectrum {
            cos_argument: f64::INFINITY,
        });
    } else {
        let arg = (3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt();
        if arg.abs() > 1.0 + COMPLEX_TOLERANCE || !arg.is_finite() {
            return Err(Error::ComplexSpectrum { cos_argument: arg });
        }
        let phi = arg.clamp(-1.0, 1.0).acos();
        shift + 2.0 * (-p / 3.0).sqrt() * (phi / 3.0).cos()
    };
    if largest.is_nan() || largest <= 0.0 {
        return Err(Error::NonPositiveEigenvalue { value: largest });
    }

    // remaining pair: x² − s x + P = 0
    let product = det / largest;
    let sum = (minor_sum - product) / largest;
    let mut disc = sum * sum - 4.0 * product;
    if disc < 0.0 {
        if disc < -COMPLEX_TOLERANCE * sum * sum {
            return Err(Error::ComplexSpectrum {
                cos_argument: 1.0 - disc / (sum * sum),
            });
        }
        disc = 0.0;
    }
    let big = 0.5 * (sum + sum.signum() * disc.sqrt());
    let small = if big != 0.0 { product / big } else { 0.0 };

    let mut roots = [small, big, largest];
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// The three roots via the trigonometric formula alone (no deflation).
///
/// Kept for comparison against [`characteristic_roots`].
pub fn trigonometric_roots(trace: f64, minor_sum: f64, det: f64) -> Option<[f64; 3]> {
    let shift = trace / 3.0;
    let p = minor_sum - trace * trace / 3.0;
    let q = -2.0 * trace.powi(3) / 27.0 + trace * minor_sum / 3.0 - det;
    if p >= 0.0 {
        return None;
    }
    let arg = ((3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
    let phi = arg.acos();
    let m = 2.0 * (-p / 3.0).sqrt();
    let mut roots = [0, 1, 2].map(|k| shift + m * (phi / 3.0 - 2.0 * PI * k as f64 / 3.0).cos());
    roots.sort_by(f64::total_cmp);
    Some(roots)
}
