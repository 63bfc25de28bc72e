//! Benchmark inputs shared by the criterion targets.

use hyperlap_core::laplace::{LaplaceCase, LaplaceId};
use hyperlap_core::params::{ParamBinding, Symbol};
use hyperlap_core::pfq::HyperSeries;
use hyperlap_core::{re, Complex64};

use Symbol::{A, B, C, D};

/// Gamma arguments covering the shift, reflection and large-|z| paths.
pub fn gamma_arguments() -> Vec<(&'static str, Complex64)> {
    vec![
        ("small", Complex64::new(0.3, 0.2)),
        ("moderate", Complex64::new(4.7, -2.1)),
        ("left", Complex64::new(-5.4, 0.7)),
        ("large", Complex64::new(120.0, 35.0)),
    ]
}

pub fn series_inputs() -> Vec<(&'static str, HyperSeries)> {
    let mk = |num: &[f64], den: &[f64], z: f64| HyperSeries::real(num, den, z).expect("valid series");
    vec![
        ("2F1 z=1/2", mk(&[0.7, 1.9], &[2.2], 0.5)),
        ("2F1 z=-1", mk(&[0.8, 1.3], &[1.4], -1.0)),
        ("3F2 z=1", mk(&[0.8, 1.3, 1.1], &[1.05, 2.2], 1.0)),
        ("1F1 z=-40", mk(&[1.0], &[2.0], -40.0)),
    ]
}

pub fn laplace_cases() -> Vec<LaplaceCase> {
    let case =
        |id, pairs: &[(Symbol, f64)], s| LaplaceCase::new(id, ParamBinding::real(pairs), re(s)).expect("valid case");
    vec![
        case(LaplaceId::Gauss2X, &[(A, 1.2), (B, 0.9), (D, 1.4)], 2.0),
        case(LaplaceId::KummerX, &[(A, 2.1), (B, 0.35), (D, 1.7)], 3.1),
        case(LaplaceId::Watson1X, &[(A, 0.8), (B, 1.3), (C, 1.1), (D, 2.1)], 1.5),
    ]
}
