//! Generalized hypergeometric series, gamma-function closed forms and
//! Laplace transforms of ₂F₂ / ₃F₃ built on extended summation theorems.
//!
//! Every closed form in [`laplace`] and [`summation`] can be checked against
//! two independent oracles: direct series summation ([`pfq`]) and numerical
//! integration of the Laplace integral ([`quadrature`]). The [`verifier`]
//! module samples admissible parameters and runs those checks in bulk.

#![allow(clippy::excessive_precision)]

pub mod accel;
pub mod dd;
pub mod error;
pub mod gamma;
pub mod laplace;
pub mod params;
pub mod pfq;
pub mod quadrature;
pub mod summation;
pub mod verifier;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use gamma::{gamma, gamma_ratio, ln_gamma, pochhammer, GammaRatio};
pub use laplace::{LaplaceCase, LaplaceId};
pub use params::{ClosedFormBreakdown, IdentityId, ParamBinding, Symbol};
pub use pfq::{ConvergenceClass, HyperSeries, SeriesResult};
pub use quadrature::{IntegralResult, TailMethod};
pub use summation::{DixonVariant, SummationId};
pub use verifier::{CheckReport, DixonVerdict, Draw, OracleKind, SamplerConfig, SuiteResult, Tolerances};

/// Shorthand for a real complex number.
#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
