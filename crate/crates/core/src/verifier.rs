//! Seeded parameter sampling, residual checks against the series,
//! quadrature, specialization and compositional oracles, and suite runs.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gamma::pole_distance;
use crate::laplace::{self, LaplaceCase, LaplaceId};
use crate::params::{IdentityId, ParamBinding, Symbol};
use crate::pfq::{self, HyperSeries};
use crate::quadrature;
use crate::summation::{self, DixonVariant, SummationId};

/// Relative residuals are taken against `max(|rhs|, RESIDUAL_FLOOR)`.
pub const RESIDUAL_FLOOR: f64 = 1e-300;
/// Right-hand sides smaller than this are compared in absolute terms.
pub const NEAR_ZERO_RHS: f64 = 1e-12;
pub const QUADRATURE_DRAWS: usize = 25;
pub const DIXON_DRAWS: usize = 50;

/// Series tolerances passed to the pFq summation itself.
const SERIES_EVAL_TOL: f64 = 1e-15;
const SERIES_EVAL_TOL_UNIT: f64 = 1e-12;
/// Quadrature draws keep the transformed series excess at least this large,
/// so the algebraic tail of the integrand decays like `u^{-1.1}` or faster.
const QUADRATURE_MIN_EXCESS: f64 = 0.1;
/// A Dixon draw only discriminates between the variants when their values
/// differ by at least this relative amount.
const DIXON_DISCRIMINATION: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Sampling interval per symbol: `a`…`e` and `s`.
    pub ranges: BTreeMap<String, (f64, f64)>,
    pub pole_margin: f64,
    pub max_rejects: usize,
    /// Adds imaginary parts in `[-0.5, 0.5]` to `a`…`e`.
    pub complex_params: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self::with_seed(42)
    }
}

impl SamplerConfig {
    pub fn with_seed(seed: u64) -> Self {
        let ranges = [
            ("a", (0.3, 3.0)),
            ("b", (0.3, 3.0)),
            ("c", (0.3, 3.0)),
            ("d", (0.3, 4.0)),
            ("e", (0.3, 3.0)),
            ("s", (0.5, 4.0)),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        Self {
            seed,
            ranges,
            pole_margin: 1e-3,
            max_rejects: 10_000,
            complex_params: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for key in ["a", "b", "c", "d", "e", "s"] {
            let (lo, hi) = self
                .ranges
                .get(key)
                .ok_or_else(|| Error::InvalidBinding(format!("missing range for {key}")))?;
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidBinding(format!("empty range for {key}")));
            }
        }
        if self.pole_margin <= 0.0 || self.pole_margin.is_nan() {
            return Err(Error::InvalidBinding("pole_margin must be positive".into()));
        }
        Ok(())
    }

    fn range(&self, key: &str) -> (f64, f64) {
        self.ranges[key]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OracleKind {
    Series,
    Quadrature,
    Specialization,
    Compositional,
}

impl OracleKind {
    fn stream(self) -> u64 {
        match self {
            OracleKind::Series => 0,
            OracleKind::Quadrature => 1,
            OracleKind::Specialization => 2,
            OracleKind::Compositional => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Series oracle at arguments `½` and `-1`.
    pub series: f64,
    /// Series oracle at unit argument.
    pub series_unit: f64,
    pub quadrature: f64,
    pub specialization: f64,
    pub compositional: f64,
    /// Accuracy requested from the quadrature itself.
    pub quadrature_oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            series: 1e-9,
            series_unit: 1e-6,
            quadrature: 1e-5,
            specialization: 1e-10,
            compositional: 1e-13,
            quadrature_oracle: quadrature::DEFAULT_TOL,
        }
    }
}

impl Tolerances {
    pub fn for_check(&self, id: IdentityId, oracle: OracleKind) -> f64 {
        match oracle {
            OracleKind::Series if unit_argument(id) => self.series_unit,
            OracleKind::Series => self.series,
            OracleKind::Quadrature => self.quadrature,
            OracleKind::Specialization => self.specialization,
            OracleKind::Compositional => self.compositional,
        }
    }
}

fn unit_argument(id: IdentityId) -> bool {
    match id {
        IdentityId::Sum(s) => s.unit_argument(),
        IdentityId::Lap(l) => l.unit_argument(),
    }
}

/// One sampled parameter point; `s` is set for Laplace identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Draw {
    pub params: ParamBinding,
    pub s: Option<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub identity_id: IdentityId,
    pub params: ParamBinding,
    pub s: Option<Complex64>,
    pub lhs: Option<Complex64>,
    pub rhs: Option<Complex64>,
    pub abs_residual: Option<f64>,
    pub rel_residual: Option<f64>,
    pub oracle: OracleKind,
    pub tolerance: f64,
    pub pass: bool,
    pub near_zero_rhs: bool,
    pub diagnostics: String,
}

impl CheckReport {
    pub fn compare(
        identity_id: IdentityId,
        draw: Draw,
        oracle: OracleKind,
        tolerance: f64,
        lhs: Complex64,
        rhs: Complex64,
        diagnostics: String,
    ) -> Self {
        let abs = (lhs - rhs).norm();
        let rel = abs / rhs.norm().max(RESIDUAL_FLOOR);
        let near_zero = rhs.norm() < NEAR_ZERO_RHS;
        let pass = if near_zero { abs < tolerance } else { rel < tolerance };
        Self {
            identity_id,
            params: draw.params,
            s: draw.s,
            lhs: Some(lhs),
            rhs: Some(rhs),
            abs_residual: Some(abs),
            rel_residual: Some(rel),
            oracle,
            tolerance,
            pass: pass && abs.is_finite(),
            near_zero_rhs: near_zero,
            diagnostics,
        }
    }

    pub fn failed(identity_id: IdentityId, draw: Draw, oracle: OracleKind, tolerance: f64, err: &Error) -> Self {
        Self {
            identity_id,
            params: draw.params,
            s: draw.s,
            lhs: None,
            rhs: None,
            abs_residual: None,
            rel_residual: None,
            oracle,
            tolerance,
            pass: false,
            near_zero_rhs: false,
            diagnostics: err.to_string(),
        }
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CheckReport", 15)?;
        st.serialize_field("identity_id", &self.identity_id)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("s_re", &self.s.map(|s| s.re))?;
        st.serialize_field("s_im", &self.s.map(|s| s.im))?;
        st.serialize_field("lhs_re", &self.lhs.map(|z| z.re))?;
        st.serialize_field("lhs_im", &self.lhs.map(|z| z.im))?;
        st.serialize_field("rhs_re", &self.rhs.map(|z| z.re))?;
        st.serialize_field("rhs_im", &self.rhs.map(|z| z.im))?;
        st.serialize_field("abs_residual", &self.abs_residual)?;
        st.serialize_field("rel_residual", &self.rel_residual)?;
        st.serialize_field("oracle", &self.oracle)?;
        st.serialize_field("tolerance", &self.tolerance)?;
        st.serialize_field("pass", &self.pass)?;
        st.serialize_field("near_zero_rhs", &self.near_zero_rhs)?;
        st.serialize_field("diagnostics", &self.diagnostics)?;
        st.end()
    }
}

/// Series value plus a note when the summation fell short of the accuracy
/// the comparison at `check_tol` needs.
fn series_value(spec: &HyperSeries, tol: f64, check_tol: f64) -> Result<(Complex64, String)> {
    let r = match pfq::eval(spec, tol, pfq::DEFAULT_MAX_TERMS) {
        Ok(r) => r,
        Err(Error::MaxTermsExceeded { best }) => *best,
        Err(e) => return Err(e),
    };
    Ok((r.value, series_note(&r, check_tol)))
}

fn series_note(r: &pfq::SeriesResult, check_tol: f64) -> String {
    if r.converged || r.tail_estimate <= 0.1 * check_tol * r.value.norm() {
        return String::new();
    }
    format!(
        "series not converged after {} terms (tail estimate {:.1e})",
        r.terms_used, r.tail_estimate
    )
}

fn laplace_case(id: LaplaceId, draw: &Draw) -> Result<LaplaceCase> {
    let s = draw
        .s
        .ok_or_else(|| Error::InvalidBinding("missing parameter s".into()))?;
    LaplaceCase::new(id, draw.params, s)
}

fn oracle_values(
    id: IdentityId,
    oracle: OracleKind,
    draw: &Draw,
    tol: &Tolerances,
) -> Result<(Complex64, Complex64, String)> {
    let check_tol = tol.for_check(id, oracle);
    match (id, oracle) {
        (IdentityId::Sum(sid), OracleKind::Series) => {
            let rhs = summation::rhs_closed_form(sid, &draw.params)?.value;
            let eval_tol = if sid.unit_argument() {
                SERIES_EVAL_TOL_UNIT
            } else {
                SERIES_EVAL_TOL
            };
            let (lhs, diag) = series_value(&summation::lhs_spec(sid, &draw.params)?, eval_tol, check_tol)?;
            Ok((lhs, rhs, diag))
        }
        (IdentityId::Lap(lid), OracleKind::Series) => {
            let case = laplace_case(lid, draw)?;
            let rhs = laplace::closed_form(&case)?.value;
            let (v, kernel) = laplace::lhs_integrand(&case)?;
            let eval_tol = if lid.unit_argument() {
                SERIES_EVAL_TOL_UNIT
            } else {
                SERIES_EVAL_TOL
            };
            let r = laplace::transform_rhs_series(v, case.s, case.w, &kernel, eval_tol)?;
            Ok((r.value, rhs, series_note(&r, check_tol)))
        }
        (IdentityId::Lap(lid), OracleKind::Quadrature) => {
            let case = laplace_case(lid, draw)?;
            let rhs = laplace::closed_form(&case)?.value;
            let (v, kernel) = laplace::lhs_integrand(&case)?;
            let q = quadrature::laplace_numeric(v, case.s, case.w, &kernel, tol.quadrature_oracle)?;
            let diag = format!(
                "nodes={} abs_err_est={:.3e} tail={:?}",
                q.nodes_used, q.abs_err_est, q.tail_method
            );
            Ok((q.value, rhs, diag))
        }
        (IdentityId::Lap(lid), OracleKind::Compositional) => {
            let case = laplace_case(lid, draw)?;
            let rhs = laplace::closed_form(&case)?.value;
            let lhs = laplace::closed_form_direct(&case)?.value;
            Ok((lhs, rhs, String::new()))
        }
        (IdentityId::Lap(lid), OracleKind::Specialization) => {
            let s = draw
                .s
                .ok_or_else(|| Error::InvalidBinding("missing parameter s".into()))?;
            let (extended, target, classical) = laplace::specialize(lid, &draw.params)?;
            let lhs = laplace::closed_form(&LaplaceCase::new(lid, extended, s)?)?.value;
            let rhs = laplace::closed_form(&LaplaceCase::new(target, classical, s)?)?.value;
            let rule = laplace::specialization_target(lid)?.d_rule;
            Ok((lhs, rhs, format!("{rule} -> {target}")))
        }
        _ => Err(Error::InvalidBinding(format!(
            "{oracle:?} oracle does not apply to {id}"
        ))),
    }
}

/// Runs one oracle comparison, returning evaluation errors to the caller.
pub fn try_check(id: IdentityId, oracle: OracleKind, draw: Draw, tol: &Tolerances) -> Result<CheckReport> {
    let tolerance = tol.for_check(id, oracle);
    let (lhs, rhs, diag) = oracle_values(id, oracle, &draw, tol)?;
    Ok(CheckReport::compare(id, draw, oracle, tolerance, lhs, rhs, diag))
}

/// Runs one oracle comparison. Errors become failed reports.
pub fn check(id: IdentityId, oracle: OracleKind, draw: Draw, tol: &Tolerances) -> CheckReport {
    try_check(id, oracle, draw, tol)
        .unwrap_or_else(|e| CheckReport::failed(id, draw, oracle, tol.for_check(id, oracle), &e))
}

/// Oracles that apply to an identity.
pub fn oracles_for(id: IdentityId) -> &'static [OracleKind] {
    match id {
        IdentityId::Sum(_) => &[OracleKind::Series],
        IdentityId::Lap(l) if l.is_extended() => &[
            OracleKind::Series,
            OracleKind::Quadrature,
            OracleKind::Specialization,
            OracleKind::Compositional,
        ],
        IdentityId::Lap(l) if l.is_closed_form() => &[OracleKind::Series, OracleKind::Quadrature],
        IdentityId::Lap(_) => &[],
    }
}

fn catalog_index(id: IdentityId) -> u64 {
    IdentityId::catalog()
        .iter()
        .position(|x| *x == id)
        .map_or(u64::MAX >> 8, |i| i as u64)
}

fn rng_for(cfg: &SamplerConfig, id: IdentityId, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream((catalog_index(id) << 8) | purpose);
    rng
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    rng.gen_range(lo..hi)
}

fn draw_symbols(rng: &mut ChaCha8Rng, cfg: &SamplerConfig, id: IdentityId, with_d: bool) -> Draw {
    let mut params = ParamBinding::new();
    let whipple = id == IdentityId::Lap(LaplaceId::Whipple);
    for &sym in id.required() {
        if (sym == Symbol::D && !with_d) || (whipple && matches!(sym, Symbol::B | Symbol::E)) {
            continue;
        }
        let mut v = Complex64::new(uniform(rng, cfg.range(sym.name())), 0.0);
        if cfg.complex_params {
            v.im = rng.gen_range(-0.5..0.5);
        }
        params.set(sym, v);
    }
    if whipple {
        let a = params.get(Symbol::A).expect("drawn");
        let c = params.get(Symbol::C).expect("drawn");
        let d = params.get(Symbol::D).expect("drawn");
        params.set(Symbol::B, 1.0 - a);
        params.set(Symbol::E, 1.0 + c * 2.0 - d);
    }
    let s = match id {
        IdentityId::Lap(_) => Some(Complex64::new(uniform(rng, cfg.range("s")), 0.0)),
        IdentityId::Sum(_) => None,
    };
    Draw { params, s }
}

fn series_clearance(spec: &HyperSeries) -> f64 {
    spec.denominator()
        .iter()
        .map(|b| pole_distance(*b))
        .fold(f64::INFINITY, f64::min)
}

/// Validity plus the sampler's margins: gamma arguments and series
/// denominators away from poles, degenerate parameters avoided.
fn admissible(id: IdentityId, draw: &Draw, margin: f64) -> bool {
    let ok = || -> Result<bool> {
        match id {
            IdentityId::Sum(sid) => {
                if summation::validity(sid, &draw.params).is_err() {
                    return Ok(false);
                }
                let mut clearance =
                    summation::closed_form_expr(sid, &draw.params, DixonVariant::Eq33)?.pole_clearance();
                if sid == SummationId::DixonX {
                    let alt = summation::closed_form_expr(sid, &draw.params, DixonVariant::Eq121)?;
                    clearance = clearance.min(alt.pole_clearance());
                }
                let spec = summation::lhs_spec(sid, &draw.params)?;
                Ok(clearance >= margin
                    && series_clearance(&spec) >= margin
                    && summation::degeneracy_gap(sid, &draw.params) >= margin)
            }
            IdentityId::Lap(lid) => {
                let case = laplace_case(lid, draw)?;
                if laplace::validity(&case).is_err() {
                    return Ok(false);
                }
                let mut clearance = laplace::closed_form_expr(&case)?.pole_clearance();
                if lid.is_extended() {
                    clearance = clearance.min(laplace::direct_expr(&case)?.pole_clearance());
                }
                let series = laplace::transformed_series(&case)?;
                Ok(clearance >= margin
                    && series_clearance(&series) >= margin
                    && laplace::degeneracy_gap(lid, &draw.params) >= margin)
            }
        }
    };
    ok().unwrap_or(false)
}

fn accept(id: IdentityId, purpose: OracleKind, draw: &mut Draw, margin: f64) -> bool {
    match (id, purpose) {
        (IdentityId::Lap(lid), OracleKind::Specialization) => {
            let Ok((extended, target, classical)) = laplace::specialize(lid, &draw.params) else {
                return false;
            };
            let ext = Draw {
                params: extended,
                s: draw.s,
            };
            let cls = Draw {
                params: classical,
                s: draw.s,
            };
            let ok = admissible(id, &ext, margin) && admissible(IdentityId::Lap(target), &cls, margin);
            if ok {
                draw.params = extended;
            }
            ok
        }
        (IdentityId::Lap(lid), OracleKind::Quadrature) => {
            if !admissible(id, draw, margin) {
                return false;
            }
            if !lid.unit_argument() {
                return true;
            }
            laplace_case(lid, draw)
                .and_then(|c| laplace::transformed_series(&c))
                .map(|s| s.excess().re >= QUADRATURE_MIN_EXCESS)
                .unwrap_or(false)
        }
        _ => admissible(id, draw, margin),
    }
}

/// Rejection-samples `n` admissible draws for one identity and oracle.
/// Deterministic in `(cfg, id, purpose, n)`.
pub fn sample_for(id: IdentityId, purpose: OracleKind, cfg: &SamplerConfig, n: usize) -> Result<Vec<Draw>> {
    cfg.validate()?;
    let mut rng = rng_for(cfg, id, purpose.stream());
    sample_with(&mut rng, cfg, n, |rng| {
        let mut draw = draw_symbols(rng, cfg, id, purpose != OracleKind::Specialization);
        accept(id, purpose, &mut draw, cfg.pole_margin).then_some(draw)
    })
}

/// `n` admissible draws for the series oracle of `id`.
pub fn sample_valid(id: IdentityId, cfg: &SamplerConfig, n: usize) -> Result<Vec<Draw>> {
    sample_for(id, OracleKind::Series, cfg, n)
}

fn sample_with<F>(rng: &mut ChaCha8Rng, cfg: &SamplerConfig, n: usize, mut attempt: F) -> Result<Vec<Draw>>
where
    F: FnMut(&mut ChaCha8Rng) -> Option<Draw>,
{
    let mut out = Vec::with_capacity(n);
    let mut rejects = 0;
    while out.len() < n {
        match attempt(rng) {
            Some(d) => out.push(d),
            None => {
                rejects += 1;
                if rejects > cfg.max_rejects {
                    return Err(Error::SamplerExhausted(out.len()));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DixonVerdict {
    Eq121,
    Eq33,
    Inconclusive,
}

/// Residual thresholds for the Dixon verdict: the winning variant stays
/// below `consistent` on every draw, the other above `inconsistent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DixonThresholds {
    pub consistent: f64,
    pub inconsistent: f64,
}

impl Default for DixonThresholds {
    fn default() -> Self {
        Self {
            consistent: 1e-8,
            inconsistent: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DixonDraw {
    pub params: ParamBinding,
    pub series_re: f64,
    pub series_im: f64,
    pub residual_eq33: f64,
    pub residual_eq121: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DixonResolution {
    pub verdict: DixonVerdict,
    pub thresholds: DixonThresholds,
    pub n_draws: usize,
    pub eq33_max_residual: Option<f64>,
    pub eq33_min_residual: Option<f64>,
    pub eq121_max_residual: Option<f64>,
    pub eq121_min_residual: Option<f64>,
    pub evidence: Vec<DixonDraw>,
    pub note: Option<String>,
}

fn dixon_residuals(p: &ParamBinding) -> Result<DixonDraw> {
    let id = SummationId::DixonX;
    let v33 = summation::rhs_closed_form_variant(id, p, DixonVariant::Eq33)?.value;
    let v121 = summation::rhs_closed_form_variant(id, p, DixonVariant::Eq121)?.value;
    let (series, _) = series_value(&summation::lhs_spec(id, p)?, SERIES_EVAL_TOL_UNIT, DIXON_DISCRIMINATION)?;
    let rel = |rhs: Complex64| (series - rhs).norm() / rhs.norm().max(RESIDUAL_FLOOR);
    Ok(DixonDraw {
        params: *p,
        series_re: series.re,
        series_im: series.im,
        residual_eq33: rel(v33),
        residual_eq121: rel(v121),
    })
}

fn discriminating(p: &ParamBinding) -> bool {
    let id = SummationId::DixonX;
    let (Ok(a), Ok(b)) = (
        summation::rhs_closed_form_variant(id, p, DixonVariant::Eq33),
        summation::rhs_closed_form_variant(id, p, DixonVariant::Eq121),
    ) else {
        return false;
    };
    (a.value - b.value).norm() > DIXON_DISCRIMINATION * a.value.norm().max(b.value.norm())
}

/// Compares both printed forms of the Dixon extension against the series on
/// `n` draws where the two forms differ.
pub fn resolve_dixon_variant(cfg: &SamplerConfig, n: usize) -> DixonResolution {
    resolve_dixon_variant_with(cfg, n, DixonThresholds::default())
}

pub fn resolve_dixon_variant_with(cfg: &SamplerConfig, n: usize, thresholds: DixonThresholds) -> DixonResolution {
    let DixonThresholds {
        consistent,
        inconsistent,
    } = thresholds;
    let id = IdentityId::Sum(SummationId::DixonX);
    let mut note = None;
    let draws = match cfg.validate() {
        Err(e) => {
            note = Some(e.to_string());
            Vec::new()
        }
        Ok(()) => {
            let mut rng = rng_for(cfg, id, 4);
            match sample_with(&mut rng, cfg, n, |rng| {
                let draw = draw_symbols(rng, cfg, id, true);
                (admissible(id, &draw, cfg.pole_margin) && discriminating(&draw.params)).then_some(draw)
            }) {
                Ok(d) => d,
                Err(e) => {
                    note = Some(e.to_string());
                    Vec::new()
                }
            }
        }
    };
    let rows: Vec<Result<DixonDraw>> = draws.par_iter().map(|d| dixon_residuals(&d.params)).collect();
    let mut evidence = Vec::with_capacity(rows.len());
    for r in rows {
        match r {
            Ok(row) => evidence.push(row),
            Err(e) => note = Some(format!("draw failed: {e}")),
        }
    }
    let stat = |f: fn(&DixonDraw) -> f64, max: bool| {
        evidence
            .iter()
            .map(f)
            .reduce(|x, y| if max { x.max(y) } else { x.min(y) })
    };
    let eq33_max = stat(|d| d.residual_eq33, true);
    let eq33_min = stat(|d| d.residual_eq33, false);
    let eq121_max = stat(|d| d.residual_eq121, true);
    let eq121_min = stat(|d| d.residual_eq121, false);
    let complete = note.is_none() && n >= 20 && evidence.len() == n;
    if n < 20 {
        note = Some("at least 20 draws are needed for a verdict".into());
    }
    let verdict = match (eq33_max, eq33_min, eq121_max, eq121_min) {
        (Some(a_max), _, _, Some(b_min)) if complete && a_max < consistent && b_min > inconsistent => {
            DixonVerdict::Eq33
        }
        (_, Some(a_min), Some(b_max), _) if complete && b_max < consistent && a_min > inconsistent => {
            DixonVerdict::Eq121
        }
        _ => DixonVerdict::Inconclusive,
    };
    DixonResolution {
        verdict,
        thresholds,
        n_draws: evidence.len(),
        eq33_max_residual: eq33_max,
        eq33_min_residual: eq33_min,
        eq121_max_residual: eq121_max,
        eq121_min_residual: eq121_min,
        evidence,
        note,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySummary {
    pub identity_id: IdentityId,
    pub oracle: OracleKind,
    pub tolerance: f64,
    pub n_requested: usize,
    pub n_checked: usize,
    pub n_passed: usize,
    pub n_near_zero_rhs: usize,
    pub sampler_failures: usize,
    pub max_residual: Option<f64>,
    pub median_residual: Option<f64>,
    pub sampler_error: Option<String>,
}

impl IdentitySummary {
    pub fn passed(&self) -> bool {
        self.n_passed == self.n_checked && self.sampler_failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub precision: &'static str,
    pub seed: u64,
    pub n_per_id: usize,
    pub quadrature_draws: usize,
    pub complex_params: bool,
    pub pole_margin: f64,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub environment: Environment,
    pub all_passed: bool,
    pub identities: Vec<IdentitySummary>,
    pub dixon_variant_verdict: Option<DixonVerdict>,
    pub dixon_resolution: Option<DixonResolution>,
    pub reports: Vec<CheckReport>,
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    })
}

/// The (identity, oracle, draws) triples a suite run performs.
pub fn suite_plan(ids: &[IdentityId], n_per_id: usize) -> Vec<(IdentityId, OracleKind, usize)> {
    let quad_n = n_per_id.min(QUADRATURE_DRAWS);
    ids.iter()
        .flat_map(|&id| {
            oracles_for(id).iter().map(move |&oracle| {
                let n = if oracle == OracleKind::Quadrature {
                    quad_n
                } else {
                    n_per_id
                };
                (id, oracle, n)
            })
        })
        .collect()
}

/// Samples and checks every entry of `plan`. Draws are generated
/// sequentially per (identity, oracle) stream; checks run in parallel and are
/// collected in a fixed order, so the output depends only on the inputs.
pub fn run_checks(
    plan: &[(IdentityId, OracleKind, usize)],
    cfg: &SamplerConfig,
    tol: &Tolerances,
) -> (Vec<IdentitySummary>, Vec<CheckReport>) {
    let mut summaries = Vec::with_capacity(plan.len());
    let mut tasks: Vec<(usize, IdentityId, OracleKind, Draw)> = Vec::new();
    for &(id, oracle, n) in plan {
        let (draws, sampler_error) = match sample_for(id, oracle, cfg, n) {
            Ok(d) => (d, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        let idx = summaries.len();
        summaries.push(IdentitySummary {
            identity_id: id,
            oracle,
            tolerance: tol.for_check(id, oracle),
            n_requested: n,
            n_checked: draws.len(),
            n_passed: 0,
            n_near_zero_rhs: 0,
            sampler_failures: n - draws.len(),
            max_residual: None,
            median_residual: None,
            sampler_error,
        });
        tasks.extend(draws.into_iter().map(|d| (idx, id, oracle, d)));
    }

    let reports: Vec<CheckReport> = tasks
        .par_iter()
        .map(|&(_, id, oracle, draw)| check(id, oracle, draw, tol))
        .collect();

    let mut residuals: Vec<Vec<f64>> = vec![Vec::new(); summaries.len()];
    for ((idx, ..), report) in tasks.iter().zip(&reports) {
        let s = &mut summaries[*idx];
        if report.pass {
            s.n_passed += 1;
        }
        if report.near_zero_rhs {
            s.n_near_zero_rhs += 1;
        } else if let Some(r) = report.rel_residual {
            residuals[*idx].push(r);
        }
    }
    for (s, r) in summaries.iter_mut().zip(residuals) {
        s.max_residual = r.iter().copied().reduce(f64::max);
        s.median_residual = median(r);
    }
    (summaries, reports)
}

/// Runs every applicable oracle on every identity, plus the Dixon variant
/// experiment when `sum.dixonx` is selected.
pub fn run_suite(ids: &[IdentityId], cfg: &SamplerConfig, n_per_id: usize, tol: &Tolerances) -> SuiteResult {
    let (summaries, reports) = run_checks(&suite_plan(ids, n_per_id), cfg, tol);
    let dixon = (n_per_id > 0 && ids.contains(&IdentityId::Sum(SummationId::DixonX)))
        .then(|| resolve_dixon_variant(cfg, DIXON_DRAWS));
    let all_passed = summaries.iter().all(IdentitySummary::passed)
        && dixon.as_ref().is_none_or(|d| d.verdict != DixonVerdict::Inconclusive);

    SuiteResult {
        environment: Environment {
            precision: "binary64, double-double series fallback",
            seed: cfg.seed,
            n_per_id,
            quadrature_draws: n_per_id.min(QUADRATURE_DRAWS),
            complex_params: cfg.complex_params,
            pole_margin: cfg.pole_margin,
            tolerances: *tol,
        },
        all_passed,
        identities: summaries,
        dixon_variant_verdict: dixon.as_ref().map(|d| d.verdict),
        dixon_resolution: dixon,
        reports,
    }
}
