//! Small fixed-size helpers shared by the matrix modules.

use nalgebra::SMatrix;

/// Entries of the truncated Taylor tail below this norm are dropped.
const SERIES_TOLERANCE: f64 = 1e-18;
const MAX_SERIES_TERMS: usize = 200;

/// Matrix exponential by scaling and squaring with a plain Taylor series.
///
/// The matrix is scaled by `2^-s` with `s = ⌈log₂ ‖A‖∞⌉` so the series
/// converges quickly, then squared back `s` times.
pub fn expm_taylor<const N: usize>(a: &SMatrix<f64, N, N>) -> SMatrix<f64, N, N> {
    let norm = inf_norm(a);
    let squarings = if norm > 1.0 {
        norm.log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * 2f64.powi(-squarings);

    let mut sum = SMatrix::<f64, N, N>::identity();
    let mut term = SMatrix::<f64, N, N>::identity();
    for k in 1..=MAX_SERIES_TERMS {
        term = term * scaled / k as f64;
        sum += term;
        if inf_norm(&term) < SERIES_TOLERANCE {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// Maximum absolute row sum.
pub fn inf_norm<const R: usize, const C: usize>(a: &SMatrix<f64, R, C>) -> f64 {
    a.row_iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest entrywise absolute difference.
pub fn max_abs_diff<const R: usize, const C: usize>(
    a: &SMatrix<f64, R, C>,
    b: &SMatrix<f64, R, C>,
) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
