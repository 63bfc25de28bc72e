//! The generalized hypergeometric series
//!
//! ```text
//! pFq(a₁…a_p; b₁…b_q; z) = Σₙ (a₁)ₙ⋯(a_p)ₙ / ((b₁)ₙ⋯(b_q)ₙ) · zⁿ/n!
//! ```
//!
//! summed directly inside its domain of convergence. Four regimes are
//! distinguished:
//!
//! * terminating series (a numerator parameter at `0, -1, -2, …`) are summed
//!   to their last term;
//! * `p <= q`, or `p = q + 1` with `|z| < 1`, are summed term by term with
//!   compensated addition, switching to double-double when the partial sums
//!   show more than six digits of cancellation;
//! * `p = q + 1` at `z = 1` is summed with Richardson extrapolation on the
//!   known tail exponents `δ, δ + 1, …` (`δ` = parametric excess);
//! * other points of the unit circle use the Levin u-transform.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::accel::{levin_u, Richardson};
use crate::dd::{CompensatedSum, ComplexDD};
use crate::error::{Error, Result};
use crate::gamma::{pole_distance, POLE_TOL};

pub const DEFAULT_MAX_TERMS: u64 = 200_000;

/// Absolute floor for the relative stopping rule.
const ABS_FLOOR: f64 = 1e-300;
/// Cancellation level (max partial sum / |value|) that triggers double-double.
const DD_SWITCH: f64 = 1e6;
/// First checkpoint of the unit-argument extrapolation.
const RICHARDSON_N0: u64 = 16;
const LEVIN_START: usize = 5;
const LEVIN_MAX_ORDER: usize = 60;
const UNIT_EPS: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperSeries {
    numerator: Vec<Complex64>,
    denominator: Vec<Complex64>,
    argument: Complex64,
}

fn nonpositive_integer(z: Complex64) -> Option<u64> {
    (z.re < 0.5 && pole_distance(z) < POLE_TOL).then(|| (-z.re).round() as u64)
}

impl HyperSeries {
    /// Fails when a denominator parameter is a nonpositive integer `-k` and no
    /// numerator parameter `-m` with `m < k` stops the series first.
    pub fn new(numerator: Vec<Complex64>, denominator: Vec<Complex64>, argument: Complex64) -> Result<Self> {
        if numerator
            .iter()
            .chain(&denominator)
            .chain([&argument])
            .any(|z| !z.is_finite())
        {
            return Err(Error::InvalidSeries("non-finite parameter".into()));
        }
        let degree = numerator.iter().filter_map(|a| nonpositive_integer(*a)).min();
        for b in &denominator {
            if let Some(k) = nonpositive_integer(*b) {
                match degree {
                    Some(m) if m < k => {}
                    _ => {
                        return Err(Error::InvalidSeries(format!(
                            "denominator parameter {b} is a nonpositive integer"
                        )))
                    }
                }
            }
        }
        Ok(Self {
            numerator,
            denominator,
            argument,
        })
    }

    pub fn real(numerator: &[f64], denominator: &[f64], argument: f64) -> Result<Self> {
        Self::new(
            numerator.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            denominator.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Complex64::new(argument, 0.0),
        )
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Complex64] {
        &self.denominator
    }

    pub fn argument(&self) -> Complex64 {
        self.argument
    }

    pub fn p(&self) -> usize {
        self.numerator.len()
    }

    pub fn q(&self) -> usize {
        self.denominator.len()
    }

    /// Σb − Σa.
    pub fn excess(&self) -> Complex64 {
        self.denominator.iter().sum::<Complex64>() - self.numerator.iter().sum::<Complex64>()
    }

    /// Index of the last nonzero term of a terminating series.
    pub fn terminating_degree(&self) -> Option<u64> {
        self.numerator.iter().filter_map(|a| nonpositive_integer(*a)).min()
    }

    pub fn with_argument(&self, argument: Complex64) -> Self {
        Self {
            argument,
            ..self.clone()
        }
    }

    /// Prepends a numerator parameter (the `v` of a Laplace transform).
    pub fn with_leading_numerator(&self, v: Complex64, argument: Complex64) -> Result<Self> {
        let mut numerator = Vec::with_capacity(self.numerator.len() + 1);
        numerator.push(v);
        numerator.extend_from_slice(&self.numerator);
        Self::new(numerator, self.denominator.clone(), argument)
    }

    /// Removes numerator/denominator pairs that agree to within `tol`.
    pub fn cancel_pairs(&self, tol: f64) -> Self {
        let mut numerator = self.numerator.clone();
        let mut denominator = Vec::new();
        for b in &self.denominator {
            if let Some(pos) = numerator.iter().position(|a| (a - b).norm() <= tol) {
                numerator.remove(pos);
            } else {
                denominator.push(*b);
            }
        }
        Self {
            numerator,
            denominator,
            argument: self.argument,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConvergenceClass {
    AllZ,
    InsideUnitDisk,
    UnitCircleAbsolute,
    UnitCircleConditional,
    Terminating,
    Divergent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub class: ConvergenceClass,
    /// Σb − Σa.
    pub delta: Complex64,
}

impl Convergence {
    pub fn converges(&self) -> bool {
        self.class != ConvergenceClass::Divergent
    }
}

fn is_one(z: Complex64) -> bool {
    (z - 1.0).norm() <= UNIT_EPS
}

fn on_unit_circle(z: Complex64) -> bool {
    (z.norm() - 1.0).abs() <= UNIT_EPS
}

pub fn classify(spec: &HyperSeries) -> Convergence {
    use ConvergenceClass::*;
    let delta = spec.excess();
    let (p, q, z) = (spec.p(), spec.q(), spec.argument);
    let class = if spec.terminating_degree().is_some() {
        Terminating
    } else if p <= q {
        AllZ
    } else if p == q + 1 {
        if on_unit_circle(z) {
            if delta.re > 0.0 {
                UnitCircleAbsolute
            } else if !is_one(z) && delta.re > -1.0 {
                UnitCircleConditional
            } else {
                Divergent
            }
        } else if z.norm() < 1.0 {
            InsideUnitDisk
        } else {
            Divergent
        }
    } else {
        Divergent
    };
    Convergence { class, delta }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummationMethod {
    Trivial,
    Terminating,
    Direct,
    DoubleDouble,
    Richardson,
    Levin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: u64,
    /// Truncation plus rounding estimate, in the units of `value`.
    pub tail_estimate: f64,
    /// max |partial sum| / |value|, at least 1.
    pub cancellation_ratio: f64,
    pub converged: bool,
    pub method: SummationMethod,
}

/// Complex scalar used by the term recurrence; lets the same loop run in
/// f64 or double-double.
trait Lane: Copy {
    const ROUNDOFF: f64;
    const METHOD: SummationMethod;
    type Acc;
    fn one() -> Self;
    fn mul_shifted(self, a: Complex64, n: f64) -> Self;
    fn div_shifted(self, b: Complex64, n: f64) -> Self;
    fn mul_c(self, z: Complex64) -> Self;
    fn scale(self, f: f64) -> Self;
    fn norm(self) -> f64;
    fn acc(first: Self) -> Self::Acc;
    fn acc_add(acc: &mut Self::Acc, t: Self);
    fn acc_scale(acc: &mut Self::Acc, f: f64);
    fn acc_value(acc: &Self::Acc) -> Complex64;
}

impl Lane for Complex64 {
    const ROUNDOFF: f64 = f64::EPSILON / 2.0;
    const METHOD: SummationMethod = SummationMethod::Direct;
    type Acc = CompensatedSum;
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    #[inline]
    fn mul_shifted(self, a: Complex64, n: f64) -> Self {
        self * (a + n)
    }
    #[inline]
    fn div_shifted(self, b: Complex64, n: f64) -> Self {
        self / (b + n)
    }
    #[inline]
    fn mul_c(self, z: Complex64) -> Self {
        self * z
    }
    #[inline]
    fn scale(self, f: f64) -> Self {
        self * f
    }
    #[inline]
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn acc(first: Self) -> CompensatedSum {
        let mut s = CompensatedSum::new();
        s.add(first);
        s
    }
    #[inline]
    fn acc_add(acc: &mut CompensatedSum, t: Self) {
        acc.add(t)
    }
    fn acc_scale(acc: &mut CompensatedSum, f: f64) {
        acc.scale(f)
    }
    #[inline]
    fn acc_value(acc: &CompensatedSum) -> Complex64 {
        acc.value()
    }
}

impl Lane for ComplexDD {
    const ROUNDOFF: f64 = f64::EPSILON * f64::EPSILON;
    const METHOD: SummationMethod = SummationMethod::DoubleDouble;
    type Acc = ComplexDD;
    fn one() -> Self {
        ComplexDD::ONE
    }
    #[inline]
    fn mul_shifted(self, a: Complex64, n: f64) -> Self {
        self * ComplexDD::shifted(a, n)
    }
    #[inline]
    fn div_shifted(self, b: Complex64, n: f64) -> Self {
        self / ComplexDD::shifted(b, n)
    }
    #[inline]
    fn mul_c(self, z: Complex64) -> Self {
        self.mul_c64(z)
    }
    #[inline]
    fn scale(self, f: f64) -> Self {
        ComplexDD::scale(self, f)
    }
    #[inline]
    fn norm(self) -> f64 {
        ComplexDD::norm(self)
    }
    fn acc(first: Self) -> ComplexDD {
        first
    }
    #[inline]
    fn acc_add(acc: &mut ComplexDD, t: Self) {
        *acc = *acc + t
    }
    fn acc_scale(acc: &mut ComplexDD, f: f64) {
        *acc = acc.scale(f)
    }
    #[inline]
    fn acc_value(acc: &ComplexDD) -> Complex64 {
        acc.to_c64()
    }
}

/// Smallest index after which the stopping rule may fire: beyond every
/// parameter magnitude and beyond the peak of the terms.
fn min_stop_index(spec: &HyperSeries) -> u64 {
    let params = spec
        .numerator
        .iter()
        .chain(&spec.denominator)
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let zn = spec.argument.norm();
    let growth = match spec.q() as i64 - spec.p() as i64 {
        d if d >= 0 => zn.powf(1.0 / (d + 1) as f64),
        _ => 0.0,
    };
    (params + growth).ceil() as u64 + 2
}

struct DirectOutcome {
    result: SeriesResult,
    exhausted: bool,
}

/// Term-by-term summation of `exp(-log_shift) · pFq`. The running term and
/// sum share a power-of-two scale so the loop never overflows.
fn direct_sum<T: Lane>(spec: &HyperSeries, tol: f64, max_terms: u64, log_shift: f64) -> DirectOutcome {
    const RESCALE_AT: f64 = 1e150;
    let rescale_by = 2f64.powi(-500);
    let ln_rescale = 500.0 * std::f64::consts::LN_2;

    let z = spec.argument;
    let degree = spec.terminating_degree();
    let stop_floor = min_stop_index(spec);

    let mut term = T::one();
    let mut acc = T::acc(term);
    let mut log_scale = 0.0;
    let mut max_partial: f64 = 1.0;
    let mut prev_norm: f64 = 1.0;
    let mut small_run = 0;
    let mut n: u64 = 0;
    let mut tail = 0.0;
    let mut exhausted = false;

    loop {
        if let Some(m) = degree {
            if n >= m {
                break;
            }
        }
        if n + 1 >= max_terms {
            exhausted = true;
            tail = term.norm();
            break;
        }
        let nf = n as f64;
        for a in &spec.numerator {
            term = term.mul_shifted(*a, nf);
        }
        for b in &spec.denominator {
            term = term.div_shifted(*b, nf);
        }
        term = term.mul_c(z).div_shifted(Complex64::new(1.0, 0.0), nf);
        n += 1;
        T::acc_add(&mut acc, term);

        let tn = term.norm();
        let sn = T::acc_value(&acc).norm();
        max_partial = max_partial.max(sn);

        if tn > RESCALE_AT || sn > RESCALE_AT {
            term = term.scale(rescale_by);
            T::acc_scale(&mut acc, rescale_by);
            max_partial *= rescale_by;
            log_scale += ln_rescale;
            prev_norm = term.norm();
            small_run = 0;
            continue;
        }

        if degree.is_none() {
            let ratio = if prev_norm > 0.0 { tn / prev_norm } else { 0.0 };
            let past_peak = n >= stop_floor && ratio < 1.0;
            // summing to below half an ulp costs a few terms and keeps
            // finite geometric-type sums exact
            if past_peak && tn <= tol.min(0.25 * f64::EPSILON) * sn.max(ABS_FLOOR) {
                small_run += 1;
                if small_run >= 3 {
                    tail = tn * ratio / (1.0 - ratio);
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        prev_norm = tn;
    }

    let sum = T::acc_value(&acc);
    let cancellation = (max_partial / sum.norm().max(f64::MIN_POSITIVE)).max(1.0);
    let factor = (log_scale - log_shift).exp();
    let value = sum * factor;
    let rounding = 4.0 * T::ROUNDOFF * cancellation * value.norm();
    let truncation = if degree.is_some() { 0.0 } else { tail * factor };
    let tail_estimate = truncation + rounding;
    let converged = !exhausted && (degree.is_some() || tail_estimate <= tol * value.norm().max(ABS_FLOOR));
    DirectOutcome {
        result: SeriesResult {
            value,
            terms_used: n + 1,
            tail_estimate: if degree.is_some() { 0.0 } else { tail_estimate },
            cancellation_ratio: cancellation,
            converged,
            method: if degree.is_some() {
                SummationMethod::Terminating
            } else {
                T::METHOD
            },
        },
        exhausted,
    }
}

fn direct(spec: &HyperSeries, tol: f64, max_terms: u64, log_shift: f64) -> Result<SeriesResult> {
    let mut out = direct_sum::<Complex64>(spec, tol, max_terms, log_shift);
    if out.result.cancellation_ratio > DD_SWITCH {
        let method = out.result.method;
        out = direct_sum::<ComplexDD>(spec, tol, max_terms, log_shift);
        if method == SummationMethod::Terminating {
            out.result.method = SummationMethod::Terminating;
        }
    }
    if out.exhausted {
        return Err(Error::MaxTermsExceeded {
            best: Box::new(out.result),
        });
    }
    Ok(out.result)
}

/// Unit argument, `p = q + 1`, `Re δ > 0`.
fn unit_argument(spec: &HyperSeries, delta: Complex64, tol: f64, max_terms: u64) -> Result<SeriesResult> {
    let mut extrap = Richardson::new(delta, 2.0);
    let mut acc = CompensatedSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    let mut n: u64 = 0; // index of the last term added
    let mut checkpoint = RICHARDSON_N0;
    let mut max_partial: f64 = 1.0;
    let mut small_run = 0;
    let mut best = (Complex64::new(1.0, 0.0), f64::INFINITY);

    while checkpoint <= max_terms {
        while n + 1 < checkpoint {
            let nf = n as f64;
            for a in &spec.numerator {
                term *= a + nf;
            }
            for b in &spec.denominator {
                term /= b + nf;
            }
            term /= nf + 1.0;
            acc.add(term);
            n += 1;
            max_partial = max_partial.max(acc.value().norm());
        }
        let (estimate, change) = extrap.push(acc.value());
        best = (estimate, change);
        if extrap.len() >= 3 && change <= tol * estimate.norm().max(ABS_FLOOR) {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        checkpoint *= 2;
    }

    let (value, change) = best;
    let cancellation = (max_partial / value.norm().max(f64::MIN_POSITIVE)).max(1.0);
    let tail_estimate = change + 4.0 * f64::EPSILON * cancellation * value.norm();
    let converged = small_run >= 2 && tail_estimate <= tol * value.norm().max(ABS_FLOOR);
    let result = SeriesResult {
        value,
        terms_used: n + 1,
        tail_estimate,
        cancellation_ratio: cancellation,
        converged,
        method: SummationMethod::Richardson,
    };
    if small_run < 2 {
        return Err(Error::MaxTermsExceeded { best: Box::new(result) });
    }
    Ok(result)
}

/// Unit circle away from `z = 1`.
fn unit_circle(spec: &HyperSeries, tol: f64, max_terms: u64) -> Result<SeriesResult> {
    let total = (LEVIN_START + LEVIN_MAX_ORDER + 1).min(max_terms.max(3) as usize);
    let mut terms = Vec::with_capacity(total);
    let mut partial = Vec::with_capacity(total);
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::new();
    for n in 0..total {
        if n > 0 {
            let nf = (n - 1) as f64;
            for a in &spec.numerator {
                term *= a + nf;
            }
            for b in &spec.denominator {
                term /= b + nf;
            }
            term *= spec.argument / (nf + 1.0);
        }
        acc.add(term);
        terms.push(term);
        partial.push(acc.value());
    }
    let max_partial = partial.iter().map(|s| s.norm()).fold(0.0, f64::max);

    let start = LEVIN_START.min(total.saturating_sub(3));
    let mut prev: Option<Complex64> = None;
    let mut best = (partial[total - 1], f64::INFINITY, total);
    let mut small_run = 0;
    let mut k = 2;
    while start + k < total {
        let Some(v) = levin_u(&terms, &partial, start, k, 1.0) else {
            break;
        };
        if let Some(p) = prev {
            let change = (v - p).norm();
            best = (v, change, start + k + 1);
            if change <= tol * v.norm().max(ABS_FLOOR) {
                small_run += 1;
                if small_run >= 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        prev = Some(v);
        k += 1;
    }

    let (value, change, used) = best;
    let cancellation = (max_partial / value.norm().max(f64::MIN_POSITIVE)).max(1.0);
    let tail_estimate = change + 4.0 * f64::EPSILON * cancellation * value.norm();
    let converged = small_run >= 2 && tail_estimate <= tol * value.norm().max(ABS_FLOOR);
    let result = SeriesResult {
        value,
        terms_used: used as u64,
        tail_estimate,
        cancellation_ratio: cancellation,
        converged,
        method: SummationMethod::Levin,
    };
    if small_run < 2 {
        return Err(Error::MaxTermsExceeded { best: Box::new(result) });
    }
    Ok(result)
}

fn trivial() -> SeriesResult {
    SeriesResult {
        value: Complex64::new(1.0, 0.0),
        terms_used: 1,
        tail_estimate: 0.0,
        cancellation_ratio: 1.0,
        converged: true,
        method: SummationMethod::Trivial,
    }
}

/// Sums the series to relative tolerance `tol`.
///
/// A budget overrun returns [`Error::MaxTermsExceeded`] carrying the best
/// estimate. A result whose rounding error alone exceeds `tol` is returned
/// with `converged = false`.
pub fn eval(spec: &HyperSeries, tol: f64, max_terms: u64) -> Result<SeriesResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    if spec.argument == Complex64::new(0.0, 0.0) {
        return Ok(trivial());
    }
    let conv = classify(spec);
    match conv.class {
        ConvergenceClass::Divergent => Err(Error::DivergentSeries(format!(
            "p={}, q={}, |z|={}, Re(excess)={}",
            spec.p(),
            spec.q(),
            spec.argument.norm(),
            conv.delta.re
        ))),
        ConvergenceClass::Terminating | ConvergenceClass::AllZ | ConvergenceClass::InsideUnitDisk => {
            direct(spec, tol, max_terms, 0.0)
        }
        ConvergenceClass::UnitCircleAbsolute if is_one(spec.argument) => {
            unit_argument(spec, conv.delta, tol, max_terms)
        }
        ConvergenceClass::UnitCircleAbsolute | ConvergenceClass::UnitCircleConditional => {
            unit_circle(spec, tol, max_terms)
        }
    }
}

/// `exp(-log_shift) · pFq(z)`, for arguments where the series itself would
/// overflow (e.g. `e^{-u} ₃F₃(…; u)` at large `u`).
pub fn eval_scaled(spec: &HyperSeries, log_shift: f64, tol: f64, max_terms: u64) -> Result<SeriesResult> {
    if spec.argument == Complex64::new(0.0, 0.0) {
        let mut r = trivial();
        r.value *= (-log_shift).exp();
        return Ok(r);
    }
    match classify(spec).class {
        ConvergenceClass::Terminating | ConvergenceClass::AllZ | ConvergenceClass::InsideUnitDisk => {
            direct(spec, tol, max_terms, log_shift)
        }
        _ => {
            let mut r = eval(spec, tol, max_terms)?;
            let f = (-log_shift).exp();
            r.value *= f;
            r.tail_estimate *= f;
            Ok(r)
        }
    }
}

/// `d/dz pFq(a; b; z) = (Πa / Πb) · pFq(a + 1; b + 1; z)`.
pub fn derivative_shift(spec: &HyperSeries) -> Result<(Complex64, HyperSeries)> {
    if spec.denominator.iter().any(|b| b.norm() < POLE_TOL) {
        return Err(Error::InvalidSeries("denominator parameter equal to 0".into()));
    }
    let coef = spec.numerator.iter().product::<Complex64>() / spec.denominator.iter().product::<Complex64>();
    let shifted = HyperSeries::new(
        spec.numerator.iter().map(|a| a + 1.0).collect(),
        spec.denominator.iter().map(|b| b + 1.0).collect(),
        spec.argument,
    )?;
    Ok((coef, shifted))
}
