//! Circuit complexity of the time-evolved thermofield double state of a
//! harmonic oscillator in a constant electric field, in the covariance-matrix
//! picture.
//!
//! The pipeline is `params` → `generators` → `propagator` → `spectrum` →
//! `complexity`; `su11` holds the two-mode squeezing algebra and `checks`
//! collects the named invariant checks used by the command-line self-test.

pub mod checks;
pub mod complexity;
pub mod cubic;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod params;
pub mod propagator;
pub mod spectrum;
pub mod su11;

pub use complexity::{
    complexity_at, cost_from_spectrum, curve, sweep, ComplexityCurve, ComplexitySample, Knob,
    Scheme,
};
pub use error::{Error, Result};
pub use generators::{AffineMatrix3, Mode};
pub use params::{DerivedParams, ModelParams, PhysicalOscillator};
pub use spectrum::{Method, RelativeSpectrum};
