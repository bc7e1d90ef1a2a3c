//! Named invariant checks, each evaluated on a fixed pseudo-random sample.
//!
//! Backs the `selftest` command; every check reports the worst deviation it
//! saw against its tolerance.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexity::{complexity_at, curve, uniform_grid};
use crate::generators::{evolution_generator, gate_generator, symplectic_form, Mode};
use crate::linalg::max_abs_diff;
use crate::params::{
    energy_level, from_physical, partition_function, DerivedParams, ModelParams, PhysicalOscillator,
};
use crate::propagator::{
    block_positive_definite, circuit_unitary, circuit_unitary_numeric, conjugate,
    target_covariance, vacuum_covariance,
};
use crate::spectrum::{
    eigen_minus_closed, eigen_numeric, eigen_plus_numeric, eigen_simple_limit, generic_eigenvalues,
    relative_covariance, relative_covariance_closed, Method,
};
use crate::su11::{
    decompose_exponent, fundamental_generators, tfd_wavefunction, verify_in_fundamental_rep,
    SU11Exponent,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn bound(module: &'static str, name: &'static str, worst: f64, tol: f64) -> Self {
        Self {
            module,
            name,
            passed: worst <= tol,
            detail: format!("worst {worst:.3e} (tolerance {tol:.0e})"),
        }
    }

    fn flag(module: &'static str, name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            module,
            name,
            passed,
            detail,
        }
    }
}

/// One draw from the acceptance ranges: `βω, βω_R ∈ [0.1, 20]`,
/// `qE/Ω ∈ [0, 2]`, `λ_R ∈ [0.1, 10]`, `θ ∈ [0, 4π]`.
pub fn random_knobs(rng: &mut impl Rng) -> (ModelParams, f64) {
    let p = ModelParams {
        beta_omega: rng.gen_range(0.1..=20.0),
        beta_omega_ref: rng.gen_range(0.1..=20.0),
        field_ratio: rng.gen_range(0.0..=2.0),
        lambda_ref: rng.gen_range(0.1..=10.0),
    };
    (p, rng.gen_range(0.0..=4.0 * PI))
}

pub fn sample_draws(n: usize, seed: u64) -> Vec<(ModelParams, DerivedParams, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let (p, theta) = random_knobs(&mut rng);
            let d = p.derive().expect("sampled knobs are valid");
            (p, d, theta)
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn worst<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> f64) -> f64 {
    items.into_iter().map(f).fold(0.0, f64::max)
}

pub fn run_all() -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(params_checks());
    out.extend(generator_checks());
    out.extend(propagator_checks());
    out.extend(spectrum_checks());
    out.extend(complexity_checks());
    out.extend(su11_checks());
    out
}

fn params_checks() -> Vec<Check> {
    let draws = sample_draws(100, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let oscillators: Vec<PhysicalOscillator> = (0..100)
        .map(|_| PhysicalOscillator {
            mass: rng.gen_range(0.1..10.0),
            omega: rng.gen_range(0.1..10.0),
            omega_ref: rng.gen_range(0.1..10.0),
            charge: rng.gen_range(-2.0..2.0),
            field: rng.gen_range(-2.0..2.0),
            gate_scale: rng.gen_range(0.2..5.0),
            beta: rng.gen_range(0.1..5.0),
        })
        .collect();
    vec![
        Check::bound(
            "params",
            "cosh_squared_alpha_times_gap_is_one",
            worst(&draws, |(p, d, _)| {
                (d.alpha.cosh().powi(2) * (-(-p.beta_omega).exp_m1()) - 1.0).abs()
            }),
            1e-10,
        ),
        Check::bound(
            "params",
            "physical_round_trip",
            worst(&oscillators, |o| {
                let (p, d) = from_physical(o).unwrap();
                let e = p.derive().unwrap();
                rel(d.alpha, e.alpha)
                    .max(rel(d.lambda, e.lambda))
                    .max(rel(d.lambda_ref, e.lambda_ref))
                    .max(rel(d.d_tilde, e.d_tilde))
            }),
            1e-12,
        ),
        Check::bound(
            "params",
            "energy_gap_is_omega",
            worst(0..200u64, |n| {
                let (w, shift) = (1.7, 0.3 * n as f64);
                rel(energy_level(n + 1, w, shift) - energy_level(n, w, shift), w)
            }),
            1e-12,
        ),
        Check::bound(
            "params",
            "partition_function_shift_factorizes",
            worst(&oscillators, |o| {
                let shift = o.energy_shift();
                let z = partition_function(o.beta, o.omega, shift).unwrap();
                let z0 = partition_function(o.beta, o.omega, 0.0).unwrap();
                rel(z, (o.beta * shift).exp() * z0)
            }),
            1e-12,
        ),
    ]
}

fn generator_checks() -> Vec<Check> {
    let draws = sample_draws(100, 21);
    let om = symplectic_form();
    let block_sq = (om * om).fixed_view::<2, 2>(0, 0).into_owned();
    vec![
        Check::flag(
            "generators",
            "symplectic_form_squares_to_minus_identity",
            block_sq == -nalgebra::Matrix2::identity(),
            "exact integer check".into(),
        ),
        Check::bound(
            "generators",
            "gate_generators_symmetric",
            worst(&draws, |(_, d, t)| {
                Mode::BOTH
                    .iter()
                    .map(|&m| {
                        let k = gate_generator(m, d, *t);
                        (k - k.transpose()).abs().max()
                    })
                    .fold(0.0, f64::max)
            }),
            0.0,
        ),
        Check::bound(
            "generators",
            "evolution_generator_is_omega_times_gate",
            worst(&draws, |(_, d, t)| {
                Mode::BOTH
                    .iter()
                    .map(|&m| {
                        let k = gate_generator(m, d, *t);
                        max_abs_diff(&evolution_generator(m, d, *t), &(om * k))
                            / k.abs().max().max(1.0)
                    })
                    .fold(0.0, f64::max)
            }),
            1e-14,
        ),
        Check::bound(
            "generators",
            "evolution_generator_traceless_block",
            worst(&draws, |(_, d, t)| {
                Mode::BOTH
                    .iter()
                    .map(|&m| {
                        let k = evolution_generator(m, d, *t);
                        (k[(0, 0)] + k[(1, 1)]).abs() / k.abs().max().max(1.0)
                    })
                    .fold(0.0, f64::max)
            }),
            1e-14,
        ),
        Check::bound(
            "generators",
            "generators_periodic_in_phase",
            worst(&draws, |(_, d, t)| {
                Mode::BOTH
                    .iter()
                    .map(|&m| {
                        let a = evolution_generator(m, d, *t);
                        max_abs_diff(&a, &evolution_generator(m, d, t + 2.0 * PI))
                            / a.abs().max().max(1.0)
                    })
                    .fold(0.0, f64::max)
            }),
            1e-12,
        ),
    ]
}

fn propagator_checks() -> Vec<Check> {
    let draws = sample_draws(100, 31);
    let per_mode = |f: &dyn Fn(Mode, &DerivedParams, f64) -> f64| {
        worst(&draws, |(_, d, t)| {
            Mode::BOTH.iter().map(|&m| f(m, d, *t)).fold(0.0, f64::max)
        })
    };
    vec![
        Check::bound(
            "propagator",
            "closed_form_unitary_matches_expm",
            per_mode(&|m, d, t| {
                max_abs_diff(&circuit_unitary(m, d, t), &circuit_unitary_numeric(m, d, t))
            }),
            1e-10,
        ),
        Check::bound(
            "propagator",
            "unitary_block_is_symplectic",
            per_mode(&|m, d, t| {
                (circuit_unitary(m, d, t)
                    .fixed_view::<2, 2>(0, 0)
                    .determinant()
                    - 1.0)
                    .abs()
            }),
            1e-10,
        ),
        Check::bound(
            "propagator",
            "target_is_conjugated_vacuum",
            per_mode(&|m, d, t| {
                let u = circuit_unitary(m, d, t);
                max_abs_diff(
                    &target_covariance(m, d, t),
                    &conjugate(&u, &vacuum_covariance(m, d)),
                )
            }),
            1e-10,
        ),
        Check::bound(
            "propagator",
            "target_determinant_is_two",
            per_mode(&|m, d, t| rel(target_covariance(m, d, t).determinant(), 2.0)),
            1e-9,
        ),
        Check::bound(
            "propagator",
            "target_periodic_in_phase",
            per_mode(&|m, d, t| {
                let g = target_covariance(m, d, t);
                max_abs_diff(&g, &target_covariance(m, d, t + 2.0 * PI)) / g.abs().max().max(1.0)
            }),
            1e-12,
        ),
        Check::flag(
            "propagator",
            "covariance_blocks_positive_definite",
            draws.iter().all(|(_, d, t)| {
                Mode::BOTH.iter().all(|&m| {
                    block_positive_definite(&target_covariance(m, d, *t))
                        && block_positive_definite(&vacuum_covariance(m, d))
                })
            }),
            "leading minors of every sampled covariance".into(),
        ),
    ]
}

fn spectrum_checks() -> Vec<Check> {
    let draws = sample_draws(100, 41);
    let numeric_product = worst(&draws, |(_, d, t)| {
        Mode::BOTH
            .iter()
            .map(|&m| match eigen_numeric(m, d, *t) {
                Ok(s) => (s.product() - 1.0).abs(),
                Err(_) => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    });
    let alpha = crate::params::squeezing_parameter(1.0).unwrap();
    let deviations: Vec<f64> = [0.1, 0.05, 0.025]
        .iter()
        .map(|&lam| {
            let d = DerivedParams::new(alpha, lam, 1.0, 0.0);
            worst(uniform_grid(2.0 * PI, 101), |t| {
                let exact = eigen_minus_closed(&d, t).largest();
                (eigen_simple_limit(Mode::Minus, &d, t).unwrap().largest() / exact - 1.0).abs()
            })
        })
        .collect();
    vec![
        Check::bound(
            "spectrum",
            "relative_covariance_matches_printed_entries",
            worst(&draws, |(_, d, t)| {
                Mode::BOTH
                    .iter()
                    .map(|&m| {
                        max_abs_diff(
                            &relative_covariance(m, d, *t),
                            &relative_covariance_closed(m, d, *t),
                        )
                    })
                    .fold(0.0, f64::max)
            }),
            1e-10,
        ),
        Check::bound(
            "spectrum",
            "relative_determinant_is_one",
            worst(&draws, |(_, d, t)| {
                Mode::BOTH
                    .iter()
                    .map(|&m| (relative_covariance(m, d, *t).determinant() - 1.0).abs())
                    .fold(0.0, f64::max)
            }),
            1e-8,
        ),
        Check::bound(
            "spectrum",
            "exact_spectra_have_unit_product",
            numeric_product,
            1e-8,
        ),
        Check::bound(
            "spectrum",
            "minus_closed_matches_generic_solve",
            worst(&draws, |(_, d, t)| {
                let closed = eigen_minus_closed(d, *t).eigenvalues;
                let generic = generic_eigenvalues(&relative_covariance(Mode::Minus, d, *t));
                (0..3)
                    .map(|i| rel(closed[i], generic[i]))
                    .fold(0.0, f64::max)
            }),
            1e-9,
        ),
        Check::bound(
            "spectrum",
            "plus_at_zero_field_is_minus_with_negated_alpha",
            worst(&draws, |(_, d, t)| {
                let d = d.with_d_tilde(0.0);
                let plus = eigen_plus_numeric(&d, *t).map(|s| s.eigenvalues);
                let minus = eigen_minus_closed(&d.with_alpha(-d.alpha), *t).eigenvalues;
                match plus {
                    Ok(p) => (0..3).map(|i| rel(p[i], minus[i])).fold(0.0, f64::max),
                    Err(_) => f64::INFINITY,
                }
            }),
            1e-9,
        ),
        Check::bound(
            "spectrum",
            "spectrum_even_in_phase",
            worst(&draws, |(_, d, t)| {
                Mode::BOTH
                    .iter()
                    .map(|&m| {
                        let a = eigen_numeric(m, d, *t).unwrap().eigenvalues;
                        let b = eigen_numeric(m, d, -*t).unwrap().eigenvalues;
                        let c = eigen_numeric(m, d, 2.0 * PI - *t).unwrap().eigenvalues;
                        (0..3)
                            .map(|i| rel(a[i], b[i]).max(rel(a[i], c[i])))
                            .fold(0.0, f64::max)
                    })
                    .fold(0.0, f64::max)
            }),
            1e-9,
        ),
        Check::flag(
            "spectrum",
            "simple_limit_converges_as_lambda_shrinks",
            deviations.windows(2).all(|w| w[1] < w[0]),
            format!(
                "max relative deviation at lambda = 0.1, 0.05, 0.025: {:.3e} {:.3e} {:.3e}",
                deviations[0], deviations[1], deviations[2]
            ),
        ),
    ]
}

fn complexity_checks() -> Vec<Check> {
    let draws = sample_draws(40, 51);
    let exact = [Method::ClosedForm, Method::Numeric];
    let total = |p: &ModelParams, t: f64, m: Method| complexity_at(p, t, m).map(|s| s.c_total);
    let nonnegative = draws.iter().all(|(p, _, t)| {
        exact
            .iter()
            .all(|&m| total(p, *t, m).map(|c| c >= 0.0).unwrap_or(false))
    });
    let trivial = ModelParams::new(3.0, 3.0, 0.0, 1.0).unwrap();
    let coincide = ModelParams::new(800.0, 800.0, 0.0, 2.0).unwrap();
    vec![
        Check::flag(
            "complexity",
            "complexity_nonnegative",
            nonnegative,
            "all sampled C(θ) >= 0".into(),
        ),
        Check::flag(
            "complexity",
            "zero_only_for_coinciding_states",
            total(&coincide, 1.3, Method::Numeric) == Ok(0.0)
                && total(&trivial, 1.3, Method::Numeric)
                    .map(|c| c > 0.0)
                    .unwrap_or(false),
            "C = 0 at alpha = 0, lambda = lambda_R, E = 0 and C > 0 otherwise".into(),
        ),
        Check::bound(
            "complexity",
            "complexity_periodic_in_phase",
            worst(&draws, |(p, _, t)| {
                exact
                    .iter()
                    .map(|&m| (total(p, *t, m).unwrap() - total(p, t + 2.0 * PI, m).unwrap()).abs())
                    .fold(0.0, f64::max)
            }),
            1e-9,
        ),
        Check::bound(
            "complexity",
            "complexity_even_about_pi",
            worst(&draws, |(p, _, t)| {
                (total(p, *t, Method::Numeric).unwrap()
                    - total(p, 2.0 * PI - t, Method::Numeric).unwrap())
                .abs()
            }),
            1e-9,
        ),
        Check::bound(
            "complexity",
            "gate_scale_rescaling_invariance_at_zero_field",
            worst(&draws, |(p, _, t)| {
                let p = ModelParams {
                    field_ratio: 0.0,
                    ..*p
                };
                let q = ModelParams {
                    lambda_ref: 2.0 * p.lambda_ref,
                    ..p
                };
                (total(&p, *t, Method::Numeric).unwrap() - total(&q, *t, Method::Numeric).unwrap())
                    .abs()
            }),
            1e-9,
        ),
        {
            let p = ModelParams::new(1.0, 10.0, 1.0, 1.0).unwrap();
            let q = ModelParams {
                lambda_ref: 2.0,
                ..p
            };
            let diff = (total(&p, PI, Method::Numeric).unwrap()
                - total(&q, PI, Method::Numeric).unwrap())
            .abs();
            Check::flag(
                "complexity",
                "gate_scale_rescaling_changes_complexity_with_field",
                diff > 1e-3,
                format!("|C(pi) change| = {diff:.3e} at qE/Omega = 1"),
            )
        },
        Check::bound(
            "complexity",
            "mode_split_and_delta_consistency",
            worst(&draws[..10], |(p, _, _)| {
                let c = curve(p, &uniform_grid(2.0 * PI, 21), Method::Numeric).unwrap();
                c.samples
                    .iter()
                    .map(|s| {
                        (s.c_total - s.c_plus - s.c_minus)
                            .abs()
                            .max((s.delta_c - (s.c_total - c.c_at_zero)).abs())
                    })
                    .fold(0.0, f64::max)
            }),
            1e-12,
        ),
    ]
}

fn su11_checks() -> Vec<Check> {
    let [kp, km, k0] = fundamental_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let inputs: Vec<SU11Exponent> = (0..100)
        .map(|_| {
            let a = rng.gen_range(-3.0..3.0);
            SU11Exponent::new(a, -a, rng.gen_range(-3.0..3.0))
        })
        .collect();
    let betas = [0.05, 0.5, 1.0, 2.0, 10.0, 50.0];
    vec![
        Check::flag(
            "su11",
            "fundamental_commutators",
            km * kp - kp * km == 2.0 * k0 && k0 * kp - kp * k0 == kp && k0 * km - km * k0 == -km,
            "exact integer check".into(),
        ),
        Check::bound(
            "su11",
            "decomposition_matches_exponential",
            worst(&inputs, |e| match decompose_exponent(e) {
                Ok(c) => verify_in_fundamental_rep(&c, e),
                Err(_) => f64::INFINITY,
            }),
            1e-10,
        ),
        Check::bound(
            "su11",
            "squeeze_reduces_to_tanh_and_cosh",
            worst(&inputs, |e| {
                let a = e.alpha_plus;
                let c = decompose_exponent(&SU11Exponent::squeeze(a)).unwrap();
                (c.gamma_plus - a.tanh())
                    .abs()
                    .max((c.gamma_minus + a.tanh()).abs())
                    .max((c.gamma_zero - a.cosh().powi(-2)).abs())
            }),
            4.0 * f64::EPSILON,
        ),
        Check::bound(
            "su11",
            "wavefunction_widths_multiply_to_m_omega_squared",
            worst(betas, |bw| {
                let d = ModelParams::new(bw, 1.0, 0.0, 1.0)
                    .unwrap()
                    .derive()
                    .unwrap();
                let w = tfd_wavefunction(&d, 1.7);
                (w.width_plus * w.width_minus / (1.7 * 1.7) - 1.0).abs()
            }),
            1e-12,
        ),
    ]
}
