use num_complex::Complex64;
use thiserror::Error;

use crate::pfq::SeriesResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole at {0}")]
    Pole(Complex64),

    #[error("gamma overflow (ln|gamma| = {0})")]
    Overflow(f64),

    #[error("indeterminate gamma ratio: numerator pole at {num} and denominator pole at {den}")]
    Indeterminate { num: Complex64, den: Complex64 },

    /// The best available estimate is carried along with the error.
    #[error("series not converged after {} terms", best.terms_used)]
    MaxTermsExceeded { best: Box<SeriesResult> },

    #[error("divergent series: {0}")]
    DivergentSeries(String),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid binding: {0}")]
    InvalidBinding(String),

    #[error("{0}")]
    Degenerate(String),

    #[error("{0}")]
    Validity(String),

    #[error("integrand tail decays too slowly (exponent {0:.4})")]
    SlowDecay(f64),

    #[error("{0} has no specialization target")]
    NotSpecializable(String),

    #[error("sampler exhausted after {0} rejections")]
    SamplerExhausted(usize),

    #[error("quadrature failed: {0}")]
    Quadrature(String),
}

impl Error {
    /// True for errors caused by the caller's parameters rather than by the numerics.
    pub fn is_validity(&self) -> bool {
        matches!(
            self,
            Error::Validity(_) | Error::Degenerate(_) | Error::InvalidBinding(_) | Error::InvalidSeries(_)
        )
    }
}
