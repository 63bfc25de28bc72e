use std::f64::consts::PI;

use hyperlap_core::gamma::{cpow, pole_distance};
use hyperlap_core::laplace::{self, LaplaceCase, LaplaceId};
use hyperlap_core::params::{ParamBinding, Symbol};
use hyperlap_core::pfq::{self, HyperSeries};
use hyperlap_core::{gamma, pochhammer, re, Complex64};
use proptest::prelude::*;

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

fn complex_arg() -> impl Strategy<Value = Complex64> {
    (-6.0..12.0f64, -6.0..6.0f64)
        .prop_map(|(x, y)| Complex64::new(x, y))
        .prop_filter("away from poles", |z| {
            pole_distance(*z) > 1e-2 && pole_distance(*z * 2.0) > 1e-2
        })
}

fn series(num: &[f64], den: &[f64], z: f64) -> Complex64 {
    let spec = HyperSeries::real(num, den, z).unwrap();
    pfq::eval(&spec, 1e-15, pfq::DEFAULT_MAX_TERMS).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gamma_recurrence(z in complex_arg()) {
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn gamma_reflection(z in complex_arg()) {
        prop_assume!(pole_distance(re(1.0) - z) > 1e-2);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = PI / (z * PI).sin();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn gamma_duplication(z in complex_arg()) {
        prop_assume!(pole_distance(z + 0.5) > 1e-2);
        let lhs = gamma(z).unwrap() * gamma(z + 0.5).unwrap();
        let rhs = cpow(re(2.0), 1.0 - z * 2.0) * PI.sqrt() * gamma(z * 2.0).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn pochhammer_is_a_gamma_ratio(a in complex_arg(), n in 0u32..20) {
        prop_assume!(pole_distance(a + n as f64) > 1e-2);
        let lhs = pochhammer(a, n);
        let rhs = gamma(a + n as f64).unwrap() / gamma(a).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-11, "({a})_{n}: {lhs} vs {rhs}");
    }

    #[test]
    fn euler_transformation(a in 0.1..3.0f64, b in 0.1..3.0f64, c in 0.2..4.0f64, z in -0.9..0.7f64) {
        let lhs = series(&[a, b], &[c], z);
        let rhs = series(&[c - a, c - b], &[c], z) * (1.0 - z).powf(c - a - b);
        prop_assert!(rel(lhs, rhs) < 1e-11, "{lhs} vs {rhs}");
    }

    #[test]
    fn derivative_by_parameter_shift(a in 0.1..2.0f64, b in 0.1..2.0f64, c in 0.5..3.0f64, z in -0.8..0.6f64) {
        let spec = HyperSeries::real(&[a, b], &[c], z).unwrap();
        let (coef, shifted) = pfq::derivative_shift(&spec).unwrap();
        let exact = coef * pfq::eval(&shifted, 1e-15, pfq::DEFAULT_MAX_TERMS).unwrap().value;
        let h = 1e-5;
        let fd = (series(&[a, b], &[c], z + h) - series(&[a, b], &[c], z - h)) / (2.0 * h);
        prop_assert!(rel(fd, exact) < 1e-7, "{fd} vs {exact}");
    }

    #[test]
    fn laplace_scale_covariance(a in 0.3..2.5f64, b in 0.3..2.5f64, d in 0.3..3.0f64, s in 0.5..4.0f64, k in 0.5..2.0f64) {
        // s^b · F(s) is independent of s for the Gauss-type transform
        let p = ParamBinding::real(&[(Symbol::A, a), (Symbol::B, b), (Symbol::D, d)]);
        let eval = |s: f64| {
            let case = LaplaceCase::new(LaplaceId::Gauss2X, p, re(s)).unwrap();
            laplace::closed_form(&case).map(|r| r.value * s.powf(b))
        };
        if let (Ok(x), Ok(y)) = (eval(s), eval(s * k)) {
            prop_assert!(rel(x, y) < 1e-12);
        }
    }
}
