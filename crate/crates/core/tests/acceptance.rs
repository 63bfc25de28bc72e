//! Acceptance run: one PASS/FAIL line per criterion, exit status non-zero
//! if any criterion fails.

use std::f64::consts::PI;
use std::fmt::Debug;
use std::time::{Duration, Instant};

use hyperlap_core::gamma::{cpow, pole_distance, POLE_TOL};
use hyperlap_core::laplace::{self, LaplaceCase, LaplaceId};
use hyperlap_core::params::{IdentityId, ParamBinding, Rejection, Symbol};
use hyperlap_core::pfq::{self, HyperSeries};
use hyperlap_core::quadrature;
use hyperlap_core::summation::{self, SummationId};
use hyperlap_core::verifier::{
    self, CheckReport, DixonVerdict, IdentitySummary, OracleKind, SamplerConfig, Tolerances,
};
use hyperlap_core::{gamma, gamma_ratio, ln_gamma, pochhammer, re, Complex64, Error, GammaRatio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use Symbol::{A, B, C, D, E};

const SEED: u64 = 42;

struct Ledger {
    failed: Vec<u32>,
}

impl Ledger {
    fn record(&mut self, n: u32, title: &str, ok: bool, detail: String) {
        println!("[{}] {n}. {title}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(n);
        }
    }
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}

fn gamma_draw(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let x = rng.gen_range(-8.0..8.0);
        let y = if rng.gen_bool(0.5) {
            0.0
        } else {
            rng.gen_range(-8.0..8.0)
        };
        let z = Complex64::new(x, y);
        if pole_distance(z) > 1e-3 {
            return z;
        }
    }
}

#[derive(Default)]
struct Tally {
    worst: [f64; 4],
    count: [usize; 4],
    errors: usize,
}

impl Tally {
    fn update(&mut self, k: usize, got: Option<Complex64>, want: Option<Complex64>) {
        match (got, want) {
            (Some(g), Some(w)) => self.worst[k] = self.worst[k].max(rel(g, w)),
            _ => self.errors += 1,
        }
        self.count[k] += 1;
    }
}

fn criterion_1(ledger: &mut Ledger) {
    const DRAWS: usize = 1000;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut t = Tally::default();
    while t.count[0] < DRAWS {
        let z = gamma_draw(&mut rng);
        t.update(0, gamma(z + 1.0).ok(), gamma(z).ok().map(|g| z * g));
    }
    while t.count[1] < DRAWS {
        let z = gamma_draw(&mut rng);
        if pole_distance(1.0 - z) <= 1e-3 {
            continue;
        }
        let lhs = gamma(z).and_then(|g| Ok(g * gamma(1.0 - z)?)).ok();
        t.update(1, lhs, Some(PI / (z * PI).sin()));
    }
    while t.count[2] < DRAWS {
        let z = gamma_draw(&mut rng);
        if pole_distance(z + 0.5) <= 1e-3 || pole_distance(z * 2.0) <= 1e-3 {
            continue;
        }
        let lhs = gamma(z).and_then(|g| Ok(g * gamma(z + 0.5)?)).ok();
        let rhs = gamma(z * 2.0)
            .ok()
            .map(|g| cpow(re(2.0), 1.0 - z * 2.0) * PI.sqrt() * g);
        t.update(2, lhs, rhs);
    }
    while t.count[3] < DRAWS {
        let a = gamma_draw(&mut rng);
        let n: u32 = rng.gen_range(0..30);
        if pole_distance(a + n as f64) <= 1e-3 {
            continue;
        }
        let ratio = gamma_ratio(&GammaRatio::new([a + n as f64], [a])).ok();
        t.update(3, Some(pochhammer(a, n)), ratio);
    }
    let elapsed = start.elapsed();
    let max = t.worst.iter().copied().fold(0.0, f64::max);
    let ok = max < 1e-11 && t.errors == 0 && elapsed < Duration::from_secs(5);
    ledger.record(
        1,
        "gamma recurrence/reflection/duplication/Pochhammer, 1000 draws each",
        ok,
        format!(
            "max rel err {:.2e} / {:.2e} / {:.2e} / {:.2e} (limit 1e-11), {} errors, {:.2} s (limit 5 s)",
            t.worst[0],
            t.worst[1],
            t.worst[2],
            t.worst[3],
            t.errors,
            secs(elapsed)
        ),
    );
}

fn describe(summaries: &[IdentitySummary]) -> String {
    summaries
        .iter()
        .map(|s| {
            format!(
                "{} {}/{} max {:.1e}",
                s.identity_id,
                s.n_passed,
                s.n_requested,
                s.max_residual.unwrap_or(f64::NAN)
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn all_pass(summaries: &[IdentitySummary]) -> bool {
    summaries.iter().all(|s| s.passed() && s.n_checked == s.n_requested)
}

fn first_failure(reports: &[CheckReport]) -> String {
    reports
        .iter()
        .find(|r| !r.pass)
        .map(|r| format!(" first failure: {} {:?} {}", r.identity_id, r.params, r.diagnostics))
        .unwrap_or_default()
}

fn extended() -> impl Iterator<Item = IdentityId> {
    LaplaceId::EXTENDED.into_iter().map(IdentityId::Lap)
}

fn run_plan(ledger: &mut Ledger, n: u32, title: &str, plan: &[(IdentityId, OracleKind, usize)], limit: Duration) {
    let cfg = SamplerConfig::with_seed(SEED);
    let start = Instant::now();
    let (summaries, reports) = verifier::run_checks(plan, &cfg, &Tolerances::default());
    let elapsed = start.elapsed();
    let ok = all_pass(&summaries) && elapsed < limit;
    ledger.record(
        n,
        title,
        ok,
        format!(
            "{}; {:.2} s (limit {} s){}",
            describe(&summaries),
            secs(elapsed),
            limit.as_secs(),
            first_failure(&reports)
        ),
    );
}

fn criterion_2(ledger: &mut Ledger) {
    let plan: Vec<_> = SummationId::ALL
        .into_iter()
        .map(|id| (IdentityId::Sum(id), OracleKind::Series, 200))
        .collect();
    run_plan(
        ledger,
        2,
        "summation theorems vs series, 200 draws (1e-9 at 1/2 and -1, 1e-6 at 1)",
        &plan,
        Duration::from_secs(60),
    );
}

fn criterion_3(ledger: &mut Ledger) {
    let plan: Vec<_> = extended().map(|id| (id, OracleKind::Compositional, 100)).collect();
    run_plan(
        ledger,
        3,
        "new transforms, compositional vs direct closed form, 100 draws (1e-13)",
        &plan,
        Duration::from_secs(10),
    );
}

fn criterion_4(ledger: &mut Ledger) {
    let plan: Vec<_> = extended().map(|id| (id, OracleKind::Quadrature, 25)).collect();
    run_plan(
        ledger,
        4,
        "new transforms vs quadrature, 25 draws, s in [0.5, 4] (1e-5)",
        &plan,
        Duration::from_secs(240),
    );
}

fn criterion_5(ledger: &mut Ledger) {
    let plan: Vec<_> = extended().map(|id| (id, OracleKind::Specialization, 200)).collect();
    run_plan(
        ledger,
        5,
        "specializations to classical transforms, 200 draws (1e-10)",
        &plan,
        Duration::from_secs(30),
    );
}

fn criterion_6(ledger: &mut Ledger, suite_verdict: Option<DixonVerdict>) {
    let d = verifier::resolve_dixon_variant(&SamplerConfig::with_seed(SEED), 50);
    let (consistent_max, inconsistent_min) = match d.verdict {
        DixonVerdict::Eq33 => (d.eq33_max_residual, d.eq121_min_residual),
        DixonVerdict::Eq121 => (d.eq121_max_residual, d.eq33_min_residual),
        DixonVerdict::Inconclusive => (None, None),
    };
    let ok = d.verdict != DixonVerdict::Inconclusive
        && d.n_draws == 50
        && consistent_max.is_some_and(|r| r < 1e-8)
        && inconsistent_min.is_some_and(|r| r > 1e-3)
        && suite_verdict == Some(d.verdict);
    ledger.record(
        6,
        "Dixon variant resolution, 50 draws",
        ok,
        format!(
            "verdict {:?} (suite report: {:?}), consistent max {:.2e} (< 1e-8), inconsistent min {:.2e} (> 1e-3)",
            d.verdict,
            suite_verdict,
            consistent_max.unwrap_or(f64::NAN),
            inconsistent_min.unwrap_or(f64::NAN)
        ),
    );
}

fn err_is<T: Debug>(r: hyperlap_core::Result<T>, pred: impl Fn(&Error) -> bool) -> Result<(), String> {
    match r {
        Err(e) if pred(&e) => Ok(()),
        other => Err(format!("{other:?}")),
    }
}

fn reason_is(r: Result<(), Rejection>, want: &str) -> Result<(), String> {
    match r {
        Err(rej) if rej.reason == want => Ok(()),
        other => Err(format!("{other:?}")),
    }
}

fn sum_validity(id: SummationId, pairs: &[(Symbol, f64)], want: &str) -> Result<(), String> {
    reason_is(summation::validity(id, &ParamBinding::real(pairs)), want)
}

fn lap_validity(id: LaplaceId, pairs: &[(Symbol, f64)], s: f64, want: &str) -> Result<(), String> {
    let case = LaplaceCase::new(id, ParamBinding::real(pairs), re(s)).map_err(|e| e.to_string())?;
    reason_is(laplace::validity(&case), want)
}

fn general_validity(id: LaplaceId, v: f64, s: f64, w: f64, num: &[f64], den: &[f64], want: &str) -> Result<(), String> {
    let kernel = HyperSeries::real(num, den, w).map_err(|e| e.to_string())?;
    let case = LaplaceCase::general(id, re(v), re(s), re(w), kernel).map_err(|e| e.to_string())?;
    reason_is(laplace::validity(&case), want)
}

fn series_err(num: &[f64], den: &[f64], z: f64, max_terms: u64, pred: impl Fn(&Error) -> bool) -> Result<(), String> {
    let spec = HyperSeries::real(num, den, z).map_err(|e| e.to_string())?;
    err_is(pfq::eval(&spec, 1e-14, max_terms), pred)
}

fn numeric_err(v: f64, s: f64, w: f64, num: &[f64], den: &[f64], pred: impl Fn(&Error) -> bool) -> Result<(), String> {
    let spec = HyperSeries::real(num, den, w).map_err(|e| e.to_string())?;
    err_is(quadrature::laplace_numeric(re(v), re(s), re(w), &spec, 1e-7), pred)
}

type Case = (&'static str, Box<dyn Fn() -> Result<(), String>>);

fn designated_cases() -> Vec<Case> {
    let pole = |e: &Error| matches!(e, Error::Pole(_));
    let invalid_series = |e: &Error| matches!(e, Error::InvalidSeries(_));
    let divergent = |e: &Error| matches!(e, Error::DivergentSeries(_));
    let validity = |want: &'static str| move |e: &Error| matches!(e, Error::Validity(r) if r == want);
    vec![
        ("Γ(0)", Box::new(move || err_is(gamma(re(0.0)), pole))),
        ("Γ(-1)", Box::new(move || err_is(gamma(re(-1.0)), pole))),
        (
            "Γ(-7 + 1e-13)",
            Box::new(move || err_is(gamma(re(-7.0 + 0.1 * POLE_TOL)), pole)),
        ),
        ("ln Γ(-3)", Box::new(move || err_is(ln_gamma(re(-3.0)), pole))),
        (
            "Γ(200) overflow",
            Box::new(|| err_is(gamma(re(200.0)), |e| matches!(e, Error::Overflow(_)))),
        ),
        (
            "Γ(-2)/Γ(1)",
            Box::new(move || err_is(gamma_ratio(&GammaRatio::new([re(-2.0)], [re(1.0)])), pole)),
        ),
        (
            "Γ(-2)/Γ(-3)",
            Box::new(|| {
                err_is(gamma_ratio(&GammaRatio::new([re(-2.0)], [re(-3.0)])), |e| {
                    matches!(e, Error::Indeterminate { .. })
                })
            }),
        ),
        (
            "denominator 0",
            Box::new(move || err_is(HyperSeries::real(&[1.0], &[0.0], 0.5), invalid_series)),
        ),
        (
            "denominator -3",
            Box::new(move || err_is(HyperSeries::real(&[1.0], &[-3.0], 0.5), invalid_series)),
        ),
        (
            "3F1 at 1/2",
            Box::new(move || series_err(&[1.0, 2.0, 3.0], &[1.0], 0.5, 1000, divergent)),
        ),
        (
            "2F1 at 3/2",
            Box::new(move || series_err(&[1.0, 2.0], &[3.0], 1.5, 1000, divergent)),
        ),
        (
            "2F1 at 1, negative excess",
            Box::new(move || series_err(&[1.0, 1.0], &[1.5], 1.0, 1000, divergent)),
        ),
        (
            "2F1 at -1, zero excess",
            Box::new(move || series_err(&[1.0, 1.0], &[1.0], -1.0, 1000, divergent)),
        ),
        (
            "term budget",
            Box::new(|| series_err(&[1.0], &[], 0.999, 50, |e| matches!(e, Error::MaxTermsExceeded { .. }))),
        ),
        (
            "sum.gauss2x d<0",
            Box::new(|| sum_validity(SummationId::Gauss2X, &[(A, 1.0), (B, 1.0), (D, -0.5)], "Re(d)<=0")),
        ),
        (
            "sum.baileyx d=0",
            Box::new(|| sum_validity(SummationId::BaileyX, &[(A, 0.5), (C, 1.0), (D, 0.0)], "Re(d)<=0")),
        ),
        (
            "sum.kummerx b=1",
            Box::new(|| sum_validity(SummationId::KummerX, &[(B, 1.0)], "degenerate b=1")),
        ),
        (
            "sum.kummerx b>1",
            Box::new(|| sum_validity(SummationId::KummerX, &[(A, 1.0), (B, 1.5), (D, 1.0)], "series diverges")),
        ),
        (
            "sum.watson1x 2c-a-b<=-1",
            Box::new(|| {
                sum_validity(
                    SummationId::Watson1X,
                    &[(A, 2.0), (B, 2.0), (C, 1.0), (D, 1.0)],
                    "Re(2c-a-b)<=-1",
                )
            }),
        ),
        (
            "sum.watson2x a-b=1",
            Box::new(|| {
                sum_validity(
                    SummationId::Watson2X,
                    &[(A, 2.5), (B, 1.5), (C, 2.0), (D, 1.0)],
                    "degenerate a-b=1",
                )
            }),
        ),
        (
            "sum.watson2x a-b=-1",
            Box::new(|| {
                sum_validity(
                    SummationId::Watson2X,
                    &[(A, 0.5), (B, 1.5), (C, 2.0), (D, 1.0)],
                    "degenerate a-b=-1",
                )
            }),
        ),
        (
            "sum.dixonx b=1",
            Box::new(|| {
                sum_validity(
                    SummationId::DixonX,
                    &[(A, 1.0), (B, 1.0), (C, 0.2), (D, 1.0)],
                    "degenerate b=1",
                )
            }),
        ),
        (
            "sum.dixonx 1+a-b-c=0",
            Box::new(|| {
                sum_validity(
                    SummationId::DixonX,
                    &[(A, 1.0), (B, 0.5), (C, 1.5), (D, 1.0)],
                    "degenerate 1+a-b-c=0",
                )
            }),
        ),
        (
            "sum.dixonx a-2b-2c<=-2",
            Box::new(|| {
                sum_validity(
                    SummationId::DixonX,
                    &[(A, 0.5), (B, 1.5), (C, 0.6), (D, 1.0)],
                    "Re(a-2b-2c)<=-2",
                )
            }),
        ),
        (
            "sum.whipplex c<0",
            Box::new(|| {
                sum_validity(
                    SummationId::WhippleX,
                    &[(A, 0.3), (C, -0.5), (D, 1.0), (E, 0.9)],
                    "Re(c)<=0",
                )
            }),
        ),
        (
            "sum.gauss2x missing d",
            Box::new(|| sum_validity(SummationId::Gauss2X, &[(A, 1.0), (B, 1.0)], "missing parameter d")),
        ),
        (
            "sum.gauss2x extra c",
            Box::new(|| {
                sum_validity(
                    SummationId::Gauss2X,
                    &[(A, 1.0), (B, 1.0), (C, 1.0), (D, 1.0)],
                    "unexpected parameter c",
                )
            }),
        ),
        (
            "closed form at b=1",
            Box::new(|| {
                let p = ParamBinding::real(&[(A, 1.0), (B, 1.0), (D, 1.0)]);
                err_is(
                    summation::rhs_closed_form(SummationId::KummerX, &p),
                    |e| matches!(e, Error::Degenerate(r) if r == "degenerate b=1"),
                )
            }),
        ),
        (
            "lap.gauss2x s<0",
            Box::new(|| lap_validity(LaplaceId::Gauss2X, &[(A, 1.0), (B, 0.9), (D, 1.4)], -1.0, "Re(s)<=0")),
        ),
        (
            "lap.gauss2 b<0",
            Box::new(|| lap_validity(LaplaceId::Gauss2, &[(A, 1.0), (B, -0.5)], 1.0, "Re(b)<=0")),
        ),
        (
            "lap.bailey a>1",
            Box::new(|| lap_validity(LaplaceId::Bailey, &[(A, 1.5), (C, 1.0)], 1.0, "Re(1-a)<=0")),
        ),
        (
            "lap.watson c<0",
            Box::new(|| lap_validity(LaplaceId::Watson, &[(A, 0.5), (B, 0.5), (C, -0.2)], 1.0, "Re(c)<=0")),
        ),
        (
            "lap.watson 2c-a-b<=-1",
            Box::new(|| {
                lap_validity(
                    LaplaceId::Watson,
                    &[(A, 2.5), (B, 2.5), (C, 0.5)],
                    1.0,
                    "Re(2c-a-b)<=-1",
                )
            }),
        ),
        (
            "lap.dixon a-2b-2c<=-2",
            Box::new(|| {
                lap_validity(
                    LaplaceId::Dixon,
                    &[(A, 0.5), (B, 1.0), (C, 1.0)],
                    1.0,
                    "Re(a-2b-2c)<=-2",
                )
            }),
        ),
        (
            "lap.whipple a+b!=1",
            Box::new(|| {
                lap_validity(
                    LaplaceId::Whipple,
                    &[(A, 0.3), (B, 0.8), (C, 1.2), (D, 1.5), (E, 1.9)],
                    1.0,
                    "a+b!=1",
                )
            }),
        ),
        (
            "lap.whipple d+e!=1+2c",
            Box::new(|| {
                lap_validity(
                    LaplaceId::Whipple,
                    &[(A, 0.3), (B, 0.7), (C, 1.2), (D, 1.5), (E, 2.0)],
                    1.0,
                    "d+e!=1+2c",
                )
            }),
        ),
        (
            "lap.kummerx b=1",
            Box::new(|| {
                lap_validity(
                    LaplaceId::KummerX,
                    &[(A, 1.0), (B, 1.0), (D, 1.0)],
                    1.0,
                    "degenerate b=1",
                )
            }),
        ),
        (
            "lap.kummerx b>1",
            Box::new(|| {
                lap_validity(
                    LaplaceId::KummerX,
                    &[(A, 1.0), (B, 1.5), (D, 1.0)],
                    1.0,
                    "transformed series diverges",
                )
            }),
        ),
        (
            "lap.gauss2x d<0",
            Box::new(|| lap_validity(LaplaceId::Gauss2X, &[(A, 1.0), (B, 0.9), (D, -1.4)], 1.0, "Re(d)<=0")),
        ),
        (
            "general law p>q",
            Box::new(|| general_validity(LaplaceId::General, 1.0, 2.0, 1.0, &[1.0, 2.0], &[3.0], "p>q")),
        ),
        (
            "general law Re(s)<=Re(w)",
            Box::new(|| general_validity(LaplaceId::Lap1F1, 1.0, 2.0, 3.0, &[1.0], &[2.0], "Re(s)<=Re(w)")),
        ),
        (
            "general law at w=s, slow decay",
            Box::new(|| {
                general_validity(
                    LaplaceId::Lap2F2,
                    2.0,
                    1.0,
                    1.0,
                    &[1.0, 1.0],
                    &[1.5, 1.5],
                    "Re(sum(b)-sum(a)-v)<=0",
                )
            }),
        ),
        (
            "lap.1f1 with a 2F2 kernel",
            Box::new(|| {
                let kernel = HyperSeries::real(&[1.0, 1.0], &[2.0, 2.0], 1.0).map_err(|e| e.to_string())?;
                err_is(
                    LaplaceCase::general(LaplaceId::Lap1F1, re(1.0), re(2.0), re(1.0), kernel),
                    |e| matches!(e, Error::InvalidBinding(_)),
                )
            }),
        ),
        (
            "lap.general without kernel",
            Box::new(|| {
                err_is(
                    LaplaceCase::new(LaplaceId::General, ParamBinding::new(), re(1.0)),
                    |e| matches!(e, Error::InvalidBinding(_)),
                )
            }),
        ),
        (
            "classical transform has no specialization",
            Box::new(|| {
                err_is(laplace::specialization_target(LaplaceId::Gauss2), |e| {
                    matches!(e, Error::NotSpecializable(_))
                })
            }),
        ),
        (
            "quadrature v<0",
            Box::new(move || numeric_err(-0.5, 1.0, 0.5, &[1.0], &[2.0], validity("Re(v)<=0"))),
        ),
        (
            "quadrature s<0",
            Box::new(move || numeric_err(1.0, -1.0, 0.5, &[1.0], &[2.0], validity("Re(s)<=0"))),
        ),
        (
            "quadrature slow algebraic tail",
            Box::new(|| numeric_err(1.0, 1.0, 1.0, &[1.0], &[1.5], |e| matches!(e, Error::SlowDecay(_)))),
        ),
        (
            "sampler exhausted",
            Box::new(|| {
                let mut cfg = SamplerConfig::with_seed(SEED);
                cfg.ranges.insert("d".into(), (-2.0, -1.0));
                cfg.max_rejects = 100;
                err_is(
                    verifier::sample_valid(IdentityId::Sum(SummationId::Gauss2X), &cfg, 3),
                    |e| matches!(e, Error::SamplerExhausted(_)),
                )
            }),
        ),
        (
            "sampler empty range",
            Box::new(|| {
                let mut cfg = SamplerConfig::with_seed(SEED);
                cfg.ranges.insert("a".into(), (2.0, 1.0));
                err_is(
                    verifier::sample_valid(IdentityId::Sum(SummationId::Gauss2X), &cfg, 3),
                    |e| matches!(e, Error::InvalidBinding(_)),
                )
            }),
        ),
    ]
}

fn criterion_7(ledger: &mut Ledger) {
    let cases = designated_cases();
    let failures: Vec<String> = cases
        .iter()
        .filter_map(|(name, case)| case().err().map(|got| format!("{name}: got {got}")))
        .collect();
    let ok = cases.len() == 50 && failures.is_empty();
    ledger.record(
        7,
        "degenerate and invalid inputs give their designated errors",
        ok,
        format!(
            "{}/{} cases{}",
            cases.len() - failures.len(),
            cases.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; {}", failures.join("; "))
            }
        ),
    );
}

fn main() {
    let mut ledger = Ledger { failed: Vec::new() };
    criterion_1(&mut ledger);
    criterion_2(&mut ledger);
    criterion_3(&mut ledger);
    criterion_4(&mut ledger);
    criterion_5(&mut ledger);

    let ids = IdentityId::catalog();
    let cfg = SamplerConfig::with_seed(SEED);
    let tol = Tolerances::default();
    let start = Instant::now();
    let first = verifier::run_suite(&ids, &cfg, 200, &tol);
    let full_elapsed = start.elapsed();

    criterion_6(&mut ledger, first.dixon_variant_verdict);
    criterion_7(&mut ledger);

    let single_thread = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool");
    let second = single_thread.install(|| verifier::run_suite(&ids, &cfg, 200, &tol));
    let a = serde_json::to_vec(&first).expect("serialize");
    let b = serde_json::to_vec(&second).expect("serialize");
    ledger.record(
        8,
        "two seed-42 suite runs give byte-identical JSON",
        a == b,
        format!(
            "{} and {} bytes, second run on one thread, identical: {}",
            a.len(),
            b.len(),
            a == b
        ),
    );

    let failing: Vec<String> = first
        .identities
        .iter()
        .filter(|s| !s.passed())
        .map(|s| format!("{} {:?}", s.identity_id, s.oracle))
        .collect();
    let ok = first.all_passed && full_elapsed < Duration::from_secs(300);
    ledger.record(
        9,
        "full suite, all ids, n=200, seed 42",
        ok,
        format!(
            "{} checks, all passed: {}, {:.2} s (limit 300 s){}",
            first.reports.len(),
            first.all_passed,
            secs(full_elapsed),
            if failing.is_empty() {
                String::new()
            } else {
                format!("; failing: {}", failing.join(", "))
            }
        ),
    );

    if ledger.failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
    } else {
        println!("acceptance: failing criteria {:?}", ledger.failed);
        std::process::exit(1);
    }
}
