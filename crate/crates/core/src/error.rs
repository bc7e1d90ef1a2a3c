use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is outside its valid range ({reason})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("non-finite intermediate while evaluating {what}")]
    NonFiniteParameter { what: &'static str },

    #[error("characteristic cubic has a complex-conjugate pair (cos argument {cos_argument:e})")]
    ComplexSpectrum { cos_argument: f64 },

    #[error("perturbative denominator {value:e} is degenerate")]
    DegenerateDenominator { value: f64 },

    #[error("simple-limit eigenvalue vanishes (d_tilde = {d_tilde}); use the zero-field spectrum")]
    ZeroEigenvalue { d_tilde: f64 },

    #[error("eigenvalue {value:e} is not positive; log cost undefined")]
    NonPositiveEigenvalue { value: f64 },

    #[error("SU(1,1) decomposition denominator {value:e} vanishes")]
    SingularDecomposition { value: f64 },

    #[error("unknown sweep knob `{0}`")]
    InvalidKnob(String),

    #[error("phase grid is empty or contains non-finite values")]
    InvalidGrid,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonFiniteParameter { .. }
                | Error::ComplexSpectrum { .. }
                | Error::DegenerateDenominator { .. }
                | Error::ZeroEigenvalue { .. }
                | Error::NonPositiveEigenvalue { .. }
                | Error::SingularDecomposition { .. }
        )
    }
}
