use std::process::ExitCode;
use std::time::Instant;

use hyperlap_core::laplace::{self, LaplaceCase};
use hyperlap_core::params::{ClosedFormBreakdown, IdentityId, ParamBinding};
use hyperlap_core::pfq::{self, HyperSeries};
use hyperlap_core::quadrature;
use hyperlap_core::summation::{self, DixonVariant};
use hyperlap_core::verifier::{self, DixonThresholds, Draw, OracleKind, SamplerConfig, Tolerances};
use hyperlap_core::{gamma, Complex64, Error};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{
    CheckArgs, Cli, Command, DixonArgs, EvalKind, LaplaceNumericArgs, Oracle, ParamArgs, SamplerArgs, SuiteArgs,
    Variant,
};
use crate::report::{self, ReportDocument, Table, REPORT_COLUMNS};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VALIDITY: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

const DEFAULT_SEED: u64 = 42;
const DEFAULT_SERIES_TOL: f64 = 1e-15;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Validity(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Validity(_) => EXIT_VALIDITY,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validity() || matches!(e, Error::DivergentSeries(_) | Error::NotSpecializable(_)) {
            Failure::Validity(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

struct Outcome {
    results: Vec<Value>,
    table: Table,
    code: u8,
}

impl Outcome {
    fn single(value: Value, code: u8) -> Self {
        let table = Table::from_values(std::slice::from_ref(&value), REPORT_COLUMNS);
        Self {
            results: vec![value],
            table,
            code,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn complex_list(v: &[Complex64]) -> Value {
    Value::Array(v.iter().copied().map(complex).collect())
}

fn echo_params(inputs: &mut Map<String, Value>, p: &ParamArgs) {
    for (k, v) in [("a", p.a), ("b", p.b), ("c", p.c), ("d", p.d), ("e", p.e), ("s", p.s)] {
        if let Some(v) = v {
            inputs.insert(k.into(), complex(v));
        }
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let start = Instant::now();
    let common = &cli.common;
    let mut inputs = Map::new();
    let (name, outcome) = match &cli.command {
        Command::Eval { kind } => ("eval", eval(kind, common.tol, &mut inputs)),
        Command::Check(args) => ("check", check(args, common.tol, &mut inputs)),
        Command::Suite(args) => ("suite", suite(args, common.seed, common.tol, &mut inputs)),
        Command::ResolveDixon(args) => (
            "resolve-dixon",
            resolve_dixon(args, common.seed, common.tol, &mut inputs),
        ),
    };
    let (results, table, code, error) = match outcome {
        Ok(o) => (o.results, o.table, o.code, None),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(f) => {
            let (kind, message) = match &f {
                Failure::Validity(m) => ("validity", m.clone()),
                Failure::Numerical(m) => ("numerical", m.clone()),
                Failure::Usage(_) => unreachable!(),
            };
            eprintln!("error: {message}");
            let row = json!({ "error": kind, "message": message });
            let table = Table::from_values(&[row], &[]);
            (Vec::new(), table, f.code(), Some(report::ErrorRecord { kind, message }))
        }
    };
    let doc = ReportDocument {
        schema_version: report::SCHEMA_VERSION,
        command: name.to_string(),
        inputs,
        results,
        error,
        timing_ms: common.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    let written = report::render(&doc, &table, common.format).and_then(|b| report::emit(&b, common.out.as_deref()));
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(code)
}

fn eval(kind: &EvalKind, tol: Option<f64>, inputs: &mut Map<String, Value>) -> Result<Outcome, Failure> {
    match kind {
        EvalKind::Gamma { z } => {
            inputs.insert("kind".into(), json!("gamma"));
            inputs.insert("z".into(), complex(*z));
            let v = gamma::gamma(*z)?;
            Ok(Outcome::single(
                json!({ "kind": "gamma", "value_re": v.re, "value_im": v.im }),
                EXIT_OK,
            ))
        }
        EvalKind::Pfq { num, den, z, max_terms } => {
            let tol = tol.unwrap_or(DEFAULT_SERIES_TOL);
            inputs.insert("kind".into(), json!("pfq"));
            inputs.insert("num".into(), complex_list(&num.0));
            inputs.insert("den".into(), complex_list(&den.0));
            inputs.insert("z".into(), complex(*z));
            inputs.insert("tol".into(), json!(tol));
            inputs.insert("max_terms".into(), json!(max_terms));
            let spec = HyperSeries::new(num.0.clone(), den.0.clone(), *z)?;
            let r = pfq::eval(&spec, tol, *max_terms)?;
            Ok(Outcome::single(
                json!({
                    "kind": "pfq",
                    "value_re": r.value.re,
                    "value_im": r.value.im,
                    "terms_used": r.terms_used,
                    "tail_estimate": r.tail_estimate,
                    "cancellation_ratio": r.cancellation_ratio,
                    "converged": r.converged,
                    "method": to_value(&r.method),
                }),
                EXIT_OK,
            ))
        }
        EvalKind::ClosedForm { id, params, variant } => {
            inputs.insert("kind".into(), json!("closed-form"));
            inputs.insert("id".into(), json!(id.name()));
            inputs.insert("variant".into(), json!(format!("{variant:?}").to_lowercase()));
            echo_params(inputs, params);
            let b = closed_form(*id, params, *variant)?;
            Ok(Outcome::single(breakdown_value(*id, &b), EXIT_OK))
        }
        EvalKind::LaplaceNumeric(args) => laplace_numeric(args, tol, inputs),
    }
}

fn breakdown_value(id: IdentityId, b: &ClosedFormBreakdown) -> Value {
    json!({
        "kind": "closed-form",
        "identity_id": id.name(),
        "value_re": b.value.re,
        "value_im": b.value.im,
        "prefactor": complex(b.prefactor),
        "term1": complex(b.term1),
        "term2": complex(b.term2),
        "alpha": complex(b.alpha),
        "beta": complex(b.beta),
    })
}

fn require_s(params: &ParamArgs) -> Result<Complex64, Failure> {
    params
        .s
        .ok_or_else(|| Failure::Validity("invalid binding: missing parameter s".into()))
}

fn reject(r: hyperlap_core::params::Rejection) -> Failure {
    Failure::Validity(r.reason)
}

fn closed_form(id: IdentityId, params: &ParamArgs, variant: Variant) -> Result<ClosedFormBreakdown, Failure> {
    let p = params.binding();
    match id {
        IdentityId::Sum(sid) => {
            summation::validity(sid, &p).map_err(reject)?;
            let variant = match variant {
                Variant::Eq33 => DixonVariant::Eq33,
                Variant::Eq121 => DixonVariant::Eq121,
            };
            Ok(summation::rhs_closed_form_variant(sid, &p, variant)?)
        }
        IdentityId::Lap(lid) => {
            if !lid.is_closed_form() {
                return Err(Failure::Usage(format!(
                    "--id {lid} has no closed form; use eval laplace-numeric"
                )));
            }
            let case = LaplaceCase::new(lid, p, require_s(params)?)?;
            laplace::validity(&case).map_err(reject)?;
            Ok(laplace::closed_form(&case)?)
        }
    }
}

fn laplace_numeric(
    args: &LaplaceNumericArgs,
    tol: Option<f64>,
    inputs: &mut Map<String, Value>,
) -> Result<Outcome, Failure> {
    let tol = tol.unwrap_or(quadrature::DEFAULT_TOL);
    inputs.insert("kind".into(), json!("laplace-numeric"));
    inputs.insert("id".into(), json!(args.id.name()));
    inputs.insert("tol".into(), json!(tol));
    echo_params(inputs, &args.params);
    let IdentityId::Lap(lid) = args.id else {
        return Err(Failure::Usage(format!("--id {} is not a Laplace transform", args.id)));
    };
    let s = require_s(&args.params)?;
    let case = if lid.is_closed_form() {
        for (flag, given) in [
            ("--v", args.v.is_some()),
            ("--w", args.w.is_some()),
            ("--num", args.num.is_some()),
            ("--den", args.den.is_some()),
        ] {
            if given {
                return Err(Failure::Usage(format!(
                    "{flag} only applies to the general law; {lid} fixes its kernel"
                )));
            }
        }
        LaplaceCase::new(lid, args.params.binding(), s)?
    } else {
        if args.params.binding().symbols().next().is_some() {
            return Err(Failure::Usage(format!(
                "--a … --e do not apply to {lid}; give --v, --w, --num, --den"
            )));
        }
        let missing = |flag: &str| Failure::Usage(format!("{lid} needs {flag}"));
        let v = args.v.ok_or_else(|| missing("--v"))?;
        let w = args.w.ok_or_else(|| missing("--w"))?;
        let num = args.num.clone().ok_or_else(|| missing("--num"))?.0;
        let den = args.den.clone().ok_or_else(|| missing("--den"))?.0;
        inputs.insert("v".into(), complex(v));
        inputs.insert("w".into(), complex(w));
        inputs.insert("num".into(), complex_list(&num));
        inputs.insert("den".into(), complex_list(&den));
        LaplaceCase::general(lid, v, s, w, HyperSeries::new(num, den, w)?)?
    };
    laplace::validity(&case).map_err(reject)?;
    let (v, kernel) = laplace::lhs_integrand(&case)?;
    let r = quadrature::laplace_numeric(v, case.s, case.w, &kernel, tol)?;
    Ok(Outcome::single(
        json!({
            "kind": "laplace-numeric",
            "identity_id": lid.name(),
            "value_re": r.value.re,
            "value_im": r.value.im,
            "abs_err_est": r.abs_err_est,
            "nodes_used": r.nodes_used,
            "tail_method": to_value(&r.tail_method),
            "tail_contribution": complex(r.tail_contribution),
        }),
        EXIT_OK,
    ))
}

fn oracle_kind(o: Oracle) -> OracleKind {
    match o {
        Oracle::Series => OracleKind::Series,
        Oracle::Quadrature => OracleKind::Quadrature,
        Oracle::Specialization => OracleKind::Specialization,
        Oracle::Compositional => OracleKind::Compositional,
    }
}

fn validate_draw(id: IdentityId, p: &ParamBinding, s: Option<Complex64>) -> Result<(), Failure> {
    match id {
        IdentityId::Sum(sid) => summation::validity(sid, p).map_err(reject),
        IdentityId::Lap(lid) => {
            let s = s.ok_or_else(|| Failure::Validity("invalid binding: missing parameter s".into()))?;
            laplace::validity(&LaplaceCase::new(lid, *p, s)?).map_err(reject)
        }
    }
}

fn with_tolerance(tol: &mut Tolerances, id: IdentityId, oracle: OracleKind, value: f64) {
    let unit = match id {
        IdentityId::Sum(s) => s.unit_argument(),
        IdentityId::Lap(l) => l.unit_argument(),
    };
    let slot = match oracle {
        OracleKind::Series if unit => &mut tol.series_unit,
        OracleKind::Series => &mut tol.series,
        OracleKind::Quadrature => &mut tol.quadrature,
        OracleKind::Specialization => &mut tol.specialization,
        OracleKind::Compositional => &mut tol.compositional,
    };
    *slot = value;
}

fn check(args: &CheckArgs, tol: Option<f64>, inputs: &mut Map<String, Value>) -> Result<Outcome, Failure> {
    let oracle = oracle_kind(args.oracle);
    inputs.insert("id".into(), json!(args.id.name()));
    inputs.insert("oracle".into(), to_value(&oracle));
    echo_params(inputs, &args.params);
    if !verifier::oracles_for(args.id).contains(&oracle) {
        return Err(Failure::Usage(format!(
            "--oracle {oracle:?} does not apply to {}",
            args.id
        )));
    }
    let mut tolerances = Tolerances::default();
    if let Some(t) = tol {
        with_tolerance(&mut tolerances, args.id, oracle, t);
    }
    inputs.insert("tol".into(), json!(tolerances.for_check(args.id, oracle)));

    let mut params = args.params.binding();
    let s = args.params.s;
    if let (OracleKind::Specialization, IdentityId::Lap(lid)) = (oracle, args.id) {
        let (extended, target, classical) = laplace::specialize(lid, &params)?;
        validate_draw(args.id, &extended, s)?;
        validate_draw(IdentityId::Lap(target), &classical, s)?;
        params = extended;
    } else {
        validate_draw(args.id, &params, s)?;
    }
    let draw = Draw { params, s };
    let report = verifier::try_check(args.id, oracle, draw, &tolerances)?;
    let code = if report.pass { EXIT_OK } else { EXIT_NUMERICAL };
    Ok(Outcome::single(to_value(&report), code))
}

fn sampler(seed: Option<u64>, args: &SamplerArgs, inputs: &mut Map<String, Value>) -> SamplerConfig {
    let mut cfg = SamplerConfig::with_seed(seed.unwrap_or(DEFAULT_SEED));
    cfg.complex_params = args.complex;
    if let Some(m) = args.pole_margin {
        cfg.pole_margin = m;
    }
    if let Some(m) = args.max_rejects {
        cfg.max_rejects = m;
    }
    inputs.insert("sampler".into(), to_value(&cfg));
    cfg
}

fn suite(
    args: &SuiteArgs,
    seed: Option<u64>,
    tol: Option<f64>,
    inputs: &mut Map<String, Value>,
) -> Result<Outcome, Failure> {
    let ids = if args.all {
        IdentityId::catalog()
    } else {
        args.ids.clone()
    };
    let cfg = sampler(seed, &args.sampler, inputs);
    let mut tolerances = Tolerances::default();
    if let Some(t) = tol {
        tolerances.series = t;
        tolerances.series_unit = t;
        tolerances.quadrature = t;
        tolerances.specialization = t;
        tolerances.compositional = t;
    }
    let overrides = [
        (args.tol_series, &mut tolerances.series),
        (args.tol_series_unit, &mut tolerances.series_unit),
        (args.tol_quadrature, &mut tolerances.quadrature),
        (args.tol_specialization, &mut tolerances.specialization),
        (args.tol_compositional, &mut tolerances.compositional),
    ];
    for (given, slot) in overrides {
        if let Some(t) = given {
            *slot = t;
        }
    }
    inputs.insert(
        "ids".into(),
        Value::Array(ids.iter().map(|i| json!(i.name())).collect()),
    );
    inputs.insert("n".into(), json!(args.n));
    inputs.insert("resolve_variant".into(), json!(args.resolve_variant));
    inputs.insert("tolerances".into(), to_value(&tolerances));

    let mut result = verifier::run_suite(&ids, &cfg, args.n, &tolerances);
    if args.resolve_variant && result.dixon_resolution.is_none() {
        let d = verifier::resolve_dixon_variant(&cfg, verifier::DIXON_DRAWS);
        result.all_passed &= d.verdict != verifier::DixonVerdict::Inconclusive;
        result.dixon_variant_verdict = Some(d.verdict);
        result.dixon_resolution = Some(d);
    }
    let rows: Vec<Value> = result.reports.iter().map(to_value).collect();
    let table = Table::from_values(&rows, REPORT_COLUMNS);
    let code = if result.all_passed { EXIT_OK } else { EXIT_NUMERICAL };
    Ok(Outcome {
        results: vec![to_value(&result)],
        table,
        code,
    })
}

fn resolve_dixon(
    args: &DixonArgs,
    seed: Option<u64>,
    tol: Option<f64>,
    inputs: &mut Map<String, Value>,
) -> Result<Outcome, Failure> {
    let cfg = sampler(seed, &args.sampler, inputs);
    let mut thresholds = DixonThresholds::default();
    if let Some(t) = tol {
        thresholds.consistent = t;
    }
    inputs.insert("n".into(), json!(args.n));
    inputs.insert("thresholds".into(), to_value(&thresholds));
    let d = verifier::resolve_dixon_variant_with(&cfg, args.n, thresholds);
    let rows: Vec<Value> = d.evidence.iter().map(to_value).collect();
    let table = Table::from_values(&rows, &[]);
    let code = if d.verdict == verifier::DixonVerdict::Inconclusive {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        results: vec![to_value(&d)],
        table,
        code,
    })
}
