//! End-to-end values against an independent 40-digit evaluation
//! (expm of the generators, `U G₀ Uᵀ G_R⁻¹`, general eigen-solve).

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use approx::assert_relative_eq;
use tfd_complexity::complexity::{mode_costs, uniform_grid};
use tfd_complexity::spectrum::{eigen_minus_closed, eigen_numeric};
use tfd_complexity::{complexity_at, curve, sweep, Method, Mode, ModelParams, Scheme};

/// `(βω, βω_R, qE/Ω, λ_R, θ, C₊, C₋)`.
const REFERENCE: [(f64, f64, f64, f64, f64, f64, f64); 7] = [
    (
        1.0,
        10.0,
        0.0,
        1.0,
        0.0,
        6.8798768785872457,
        0.40118938717815237,
    ),
    (
        1.0,
        10.0,
        0.0,
        1.0,
        1.0,
        6.0153646411983989,
        2.983400355494164,
    ),
    (
        0.5,
        10.0,
        1.0,
        1.0,
        PI,
        24.284838768855451,
        12.905045339797337,
    ),
    (
        2.0,
        5.0,
        0.3,
        0.7,
        2.5,
        1.3166712476626856,
        1.308327130611939,
    ),
    (
        12.0,
        10.0,
        0.1,
        1.0,
        1.7,
        0.031909340712265464,
        0.016516539507939742,
    ),
    (
        3.0,
        3.0,
        0.8,
        2.0,
        0.9,
        0.61838306203417644,
        0.10301066999172186,
    ),
    (
        0.2,
        15.0,
        2.0,
        4.0,
        4.0,
        44.031809940270616,
        25.378871039767976,
    ),
];

#[test]
fn mode_costs_match_reference() {
    for (bw, bwr, fr, lr, theta, cp, cm) in REFERENCE {
        let d = ModelParams::new(bw, bwr, fr, lr).unwrap().derive().unwrap();
        for method in [Method::Numeric, Method::ClosedForm] {
            let (plus, minus) = mode_costs(&d, theta, Scheme::from(method)).unwrap();
            assert_relative_eq!(plus, cp, max_relative = 1e-10);
            assert_relative_eq!(minus, cm, max_relative = 1e-10);
        }
    }
}

#[test]
fn ln4_spectrum_and_anchor() {
    let p = ModelParams::new(4f64.ln(), 4f64.ln(), 0.0, 1.0).unwrap();
    let d = p.derive().unwrap();
    let s = eigen_minus_closed(&d, 0.0).eigenvalues;
    for (x, y) in s.iter().zip([1.0 / 3.0, 1.0, 3.0]) {
        assert_relative_eq!(*x, y, max_relative = 1e-14);
    }
    let c0 = complexity_at(&p, 0.0, Method::Numeric).unwrap().c_total;
    assert_relative_eq!(c0, 3f64.ln().powi(2), max_relative = 1e-12);
    // with λ = λ_R the trace is 1 + 2 ch 2α for every θ
    for theta in [PI / 3.0, 1.0, PI] {
        let s = eigen_numeric(Mode::Minus, &d, theta).unwrap().eigenvalues;
        for (x, y) in s.iter().zip([1.0 / 3.0, 1.0, 3.0]) {
            assert_relative_eq!(*x, y, max_relative = 1e-12);
        }
    }
}

#[test]
fn curve_is_deterministic_and_ordered() {
    let p = ModelParams::new(0.7, 9.0, 0.4, 1.3).unwrap();
    let grid: Vec<f64> = uniform_grid(4.0 * PI, 101).into_iter().rev().collect();
    let a = curve(&p, &grid, Method::Numeric).unwrap();
    let b = curve(&p, &grid, Method::Numeric).unwrap();
    assert_eq!(a, b);
    assert!(a.samples.windows(2).all(|w| w[0].theta < w[1].theta));
    assert_eq!(a.samples[0].delta_c, 0.0);
}

#[test]
fn sweep_matches_individual_curves() {
    let base = ModelParams::new(1.0, 10.0, 0.0, 1.0).unwrap();
    let grid = uniform_grid(2.0 * PI, 33);
    let vary = [
        ("field_ratio", vec![0.0, 0.2]),
        ("beta_omega", vec![0.5, 1.0, 2.0]),
    ];
    let curves = sweep(&base, &vary, &grid, Method::Numeric).unwrap();
    assert_eq!(curves.len(), 6);
    let mut i = 0;
    for fr in [0.0, 0.2] {
        for bw in [0.5, 1.0, 2.0] {
            let p = ModelParams::new(bw, 10.0, fr, 1.0).unwrap();
            assert_eq!(curves[i], curve(&p, &grid, Method::Numeric).unwrap());
            i += 1;
        }
    }
}
