//! Reference values computed independently with mpmath at 40 digits
//! (`hyper` for series, `quad` for the Laplace integrals where the kernel
//! decays exponentially) and frozen here to 20 significant digits.

#![allow(clippy::excessive_precision)]

use hyperlap_core::laplace::{self, LaplaceCase, LaplaceId};
use hyperlap_core::params::{ParamBinding, Symbol};
use hyperlap_core::pfq::{self, HyperSeries};
use hyperlap_core::quadrature;
use hyperlap_core::summation::{self, SummationId};
use hyperlap_core::{gamma, ln_gamma, re, Complex64};

use Symbol::{A, B, C, D, E};

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

#[test]
fn gamma_reference_values() {
    let cases = [
        (
            Complex64::new(1.0, 1.0),
            Complex64::new(0.498_015_668_118_356_042_71, -0.154_949_828_301_810_685_12),
        ),
        (re(-2.5), re(-0.945_308_720_482_941_881_23)),
        (
            Complex64::new(0.3, -4.2),
            Complex64::new(1.345_243_244_032_359_664_1e-4, -2.563_459_933_071_097_930_2e-3),
        ),
        (re(170.5), re(5.562_092_414_559_999_610_7e305)),
    ];
    for (z, want) in cases {
        let got = gamma(z).unwrap();
        assert!(rel(got, want) < 1e-12, "Γ({z}) = {got}, want {want}");
    }
    let l = ln_gamma(Complex64::new(10.0, 20.0)).unwrap();
    assert!(
        rel(
            l,
            Complex64::new(-1.702_980_443_956_511_060_3, 52.660_660_425_584_719_482)
        ) < 1e-14
    );
}

#[test]
fn four_f_three_at_unit_argument() {
    let spec = HyperSeries::real(&[1.1, 0.9, 1.3, 2.5], &[2.2, 2.6, 1.5], 1.0).unwrap();
    let r = pfq::eval(&spec, 1e-12, pfq::DEFAULT_MAX_TERMS).unwrap();
    assert!(rel(r.value, re(2.790_553_737_883_535_378_3)) < 1e-9, "{:?}", r);
}

fn bind(pairs: &[(Symbol, f64)]) -> ParamBinding {
    ParamBinding::real(pairs)
}

#[test]
fn summation_closed_forms_match_reference_series() {
    let cases: [(SummationId, ParamBinding, f64); 7] = [
        (
            SummationId::Gauss2X,
            bind(&[(A, 0.7), (B, 1.9), (D, 2.2)]),
            1.618_406_489_875_627_294_8,
        ),
        (
            SummationId::BaileyX,
            bind(&[(A, 0.45), (C, 1.6), (D, 0.8)]),
            1.145_532_376_191_861_478_4,
        ),
        (
            SummationId::KummerX,
            bind(&[(A, 2.1), (B, 0.35), (D, 1.7)]),
            0.800_402_848_826_455_142_52,
        ),
        (
            SummationId::Watson1X,
            bind(&[(A, 0.8), (B, 1.3), (C, 1.1), (D, 2.1)]),
            2.453_118_616_957_250_439_3,
        ),
        (
            SummationId::Watson2X,
            bind(&[(A, 0.6), (B, 0.9), (C, 1.3), (D, 0.7)]),
            1.803_994_405_310_406_279_8,
        ),
        (
            SummationId::DixonX,
            bind(&[(A, 2.4), (B, 0.5), (C, 0.6), (D, 1.9)]),
            1.162_001_764_982_328_613_6,
        ),
        (
            SummationId::WhippleX,
            bind(&[(A, 0.35), (C, 1.3), (D, 0.9), (E, 1.1)]),
            1.237_374_375_204_645_039_8,
        ),
    ];
    for (id, p, want) in cases {
        let got = summation::rhs_closed_form(id, &p).unwrap().value;
        assert!(rel(got, re(want)) < 1e-13, "{id}: {got} vs {want}");
    }
}

#[test]
fn gauss2x_with_complex_parameters() {
    let p = ParamBinding::new()
        .with(A, Complex64::new(0.7, 0.3))
        .with(B, Complex64::new(1.9, -0.2))
        .with(D, Complex64::new(2.2, 0.4));
    let want = Complex64::new(1.651_985_220_952_381_758_8, 0.176_316_070_911_715_452_21);
    let got = summation::rhs_closed_form(SummationId::Gauss2X, &p).unwrap().value;
    assert!(rel(got, want) < 1e-13, "{got}");
}

fn laplace_cases() -> Vec<(LaplaceId, ParamBinding, f64, f64)> {
    vec![
        (
            LaplaceId::Gauss2,
            bind(&[(A, 0.8), (B, 1.7)]),
            1.3,
            0.995_014_004_070_490_838_33,
        ),
        (
            LaplaceId::Bailey,
            bind(&[(A, 0.4), (C, 1.2)]),
            2.2,
            1.056_630_361_602_025_207_8,
        ),
        (
            LaplaceId::Kummer,
            bind(&[(A, 1.6), (B, 0.7)]),
            0.9,
            0.920_362_224_969_634_228_31,
        ),
        (
            LaplaceId::Watson,
            bind(&[(A, 0.5), (B, 1.2), (C, 1.4)]),
            1.7,
            0.662_848_553_486_385_361_02,
        ),
        (
            LaplaceId::Dixon,
            bind(&[(A, 1.2), (B, 0.4), (C, 0.5)]),
            2.5,
            1.273_892_739_233_841_488_8,
        ),
        (
            LaplaceId::Whipple,
            bind(&[(A, 0.3), (B, 0.7), (C, 1.2), (D, 1.5), (E, 1.9)]),
            1.1,
            0.957_293_225_270_525_005_49,
        ),
        (
            LaplaceId::Gauss2X,
            bind(&[(A, 1.2), (B, 0.9), (D, 1.4)]),
            2.0,
            0.937_676_803_339_984_437_86,
        ),
        (
            LaplaceId::BaileyX,
            bind(&[(A, 0.45), (C, 1.6), (D, 0.8)]),
            0.7,
            2.252_569_493_167_721_495_9,
        ),
        (
            LaplaceId::KummerX,
            bind(&[(A, 2.1), (B, 0.35), (D, 1.7)]),
            3.1,
            1.371_562_184_812_889_826_5,
        ),
        (
            LaplaceId::Watson1X,
            bind(&[(A, 0.8), (B, 1.3), (C, 1.1), (D, 2.1)]),
            1.5,
            1.494_028_346_067_034_433_9,
        ),
        (
            LaplaceId::Watson2X,
            bind(&[(A, 0.6), (B, 0.9), (C, 1.3), (D, 0.7)]),
            0.6,
            3.145_276_557_047_070_868_4,
        ),
        (
            LaplaceId::DixonX,
            bind(&[(A, 2.4), (B, 0.5), (C, 0.6), (D, 1.9)]),
            3.8,
            0.776_760_972_514_056_820_73,
        ),
        (
            LaplaceId::WhippleX,
            bind(&[(A, 0.35), (C, 1.3), (D, 0.9), (E, 1.1)]),
            1.2,
            0.876_164_747_313_808_312_93,
        ),
    ]
}

#[test]
fn laplace_closed_forms_match_reference_values() {
    for (id, p, s, want) in laplace_cases() {
        let case = LaplaceCase::new(id, p, re(s)).unwrap();
        let got = laplace::closed_form(&case).unwrap().value;
        assert!(rel(got, re(want)) < 1e-13, "{id}: {got} vs {want}");
        let direct = laplace::closed_form_direct(&case).unwrap().value;
        assert!(rel(direct, re(want)) < 1e-13, "{id} direct: {direct} vs {want}");
    }
}

#[test]
fn laplace_quadrature_matches_reference_values() {
    for (id, p, s, want) in laplace_cases() {
        let case = LaplaceCase::new(id, p, re(s)).unwrap();
        let (v, kernel) = laplace::lhs_integrand(&case).unwrap();
        let q = quadrature::laplace_numeric(v, case.s, case.w, &kernel, quadrature::DEFAULT_TOL).unwrap();
        assert!(rel(q.value, re(want)) < 1e-6, "{id}: {} vs {want}", q.value);
    }
}
