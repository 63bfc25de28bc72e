//! Laplace transforms of `t^{v-1} pFq(wt)`.
//!
//! The general law `∫₀^∞ e^{-st} t^{v-1} pFq(a; b; wt) dt = Γ(v) s^{-v}
//! p+1Fq(v, a; b; w/s)` turns each summation theorem into a closed form for a
//! transform. The catalog holds six classical closed forms (₁F₁ and ₂F₂
//! kernels) and seven new ones (₂F₂ and ₃F₃ kernels carrying the extra
//! `d + 1` / `d` pair).
//!
//! The new closed forms are computed as `Γ(v) s^{-v}` times the matching
//! summation right-hand side; [`closed_form_direct`] keeps an independent
//! transcription of each printed transform for cross-checking.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{cpow, GammaRatio};
use crate::params::{
    require_re_positive, ClosedForm, ClosedFormBreakdown, GammaTerm, ParamBinding, RejectKind, Rejection, Symbol,
    Validity,
};
use crate::pfq::{self, classify, HyperSeries, SeriesResult};
use crate::re;
use crate::summation::{self, DixonVariant, SummationId};

use Symbol::{A, B, C, D, E};

/// Whipple's linear constraints are checked to this absolute tolerance.
const CONSTRAINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LaplaceId {
    General,
    Lap1F1,
    Lap2F2,
    Lap3F3,
    Gauss2,
    Bailey,
    Kummer,
    Watson,
    Dixon,
    Whipple,
    Gauss2X,
    BaileyX,
    KummerX,
    Watson1X,
    Watson2X,
    DixonX,
    WhippleX,
}

impl LaplaceId {
    pub const ALL: [LaplaceId; 17] = [
        LaplaceId::General,
        LaplaceId::Lap1F1,
        LaplaceId::Lap2F2,
        LaplaceId::Lap3F3,
        LaplaceId::Gauss2,
        LaplaceId::Bailey,
        LaplaceId::Kummer,
        LaplaceId::Watson,
        LaplaceId::Dixon,
        LaplaceId::Whipple,
        LaplaceId::Gauss2X,
        LaplaceId::BaileyX,
        LaplaceId::KummerX,
        LaplaceId::Watson1X,
        LaplaceId::Watson2X,
        LaplaceId::DixonX,
        LaplaceId::WhippleX,
    ];

    pub const CLASSICAL: [LaplaceId; 6] = [
        LaplaceId::Gauss2,
        LaplaceId::Bailey,
        LaplaceId::Kummer,
        LaplaceId::Watson,
        LaplaceId::Dixon,
        LaplaceId::Whipple,
    ];

    pub const EXTENDED: [LaplaceId; 7] = [
        LaplaceId::Gauss2X,
        LaplaceId::BaileyX,
        LaplaceId::KummerX,
        LaplaceId::Watson1X,
        LaplaceId::Watson2X,
        LaplaceId::DixonX,
        LaplaceId::WhippleX,
    ];

    pub const CLOSED_FORMS: [LaplaceId; 13] = [
        LaplaceId::Gauss2,
        LaplaceId::Bailey,
        LaplaceId::Kummer,
        LaplaceId::Watson,
        LaplaceId::Dixon,
        LaplaceId::Whipple,
        LaplaceId::Gauss2X,
        LaplaceId::BaileyX,
        LaplaceId::KummerX,
        LaplaceId::Watson1X,
        LaplaceId::Watson2X,
        LaplaceId::DixonX,
        LaplaceId::WhippleX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LaplaceId::General => "lap.general",
            LaplaceId::Lap1F1 => "lap.1f1",
            LaplaceId::Lap2F2 => "lap.2f2",
            LaplaceId::Lap3F3 => "lap.3f3",
            LaplaceId::Gauss2 => "lap.gauss2",
            LaplaceId::Bailey => "lap.bailey",
            LaplaceId::Kummer => "lap.kummer",
            LaplaceId::Watson => "lap.watson",
            LaplaceId::Dixon => "lap.dixon",
            LaplaceId::Whipple => "lap.whipple",
            LaplaceId::Gauss2X => "lap.gauss2x",
            LaplaceId::BaileyX => "lap.baileyx",
            LaplaceId::KummerX => "lap.kummerx",
            LaplaceId::Watson1X => "lap.watson1x",
            LaplaceId::Watson2X => "lap.watson2x",
            LaplaceId::DixonX => "lap.dixonx",
            LaplaceId::WhippleX => "lap.whipplex",
        }
    }

    /// The summation theorem behind an extended transform.
    pub fn summation(self) -> Option<SummationId> {
        Some(match self {
            LaplaceId::Gauss2X => SummationId::Gauss2X,
            LaplaceId::BaileyX => SummationId::BaileyX,
            LaplaceId::KummerX => SummationId::KummerX,
            LaplaceId::Watson1X => SummationId::Watson1X,
            LaplaceId::Watson2X => SummationId::Watson2X,
            LaplaceId::DixonX => SummationId::DixonX,
            LaplaceId::WhippleX => SummationId::WhippleX,
            _ => return None,
        })
    }

    pub fn is_closed_form(self) -> bool {
        LaplaceId::CLOSED_FORMS.contains(&self)
    }

    pub fn is_extended(self) -> bool {
        self.summation().is_some()
    }

    pub fn required(self) -> &'static [Symbol] {
        if let Some(sum) = self.summation() {
            return sum.required();
        }
        match self {
            LaplaceId::Gauss2 | LaplaceId::Kummer => &[A, B],
            LaplaceId::Bailey => &[A, C],
            LaplaceId::Watson | LaplaceId::Dixon => &[A, B, C],
            LaplaceId::Whipple => &[A, B, C, D, E],
            _ => &[],
        }
    }

    /// `w/s` for the cataloged transforms.
    pub fn w_ratio(self) -> Option<f64> {
        match self {
            LaplaceId::Gauss2 | LaplaceId::Bailey | LaplaceId::Gauss2X | LaplaceId::BaileyX => Some(0.5),
            LaplaceId::Kummer | LaplaceId::KummerX => Some(-1.0),
            LaplaceId::General | LaplaceId::Lap1F1 | LaplaceId::Lap2F2 | LaplaceId::Lap3F3 => None,
            _ => Some(1.0),
        }
    }

    /// The transformed series is summed at `z = 1`.
    pub fn unit_argument(self) -> bool {
        self.w_ratio() == Some(1.0)
    }
}

impl fmt::Display for LaplaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LaplaceId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LaplaceId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidBinding(format!("unknown Laplace identity {s}")))
    }
}

/// One transform `∫₀^∞ e^{-st} t^{power-1} kernel(wt) dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceCase {
    pub id: LaplaceId,
    pub params: ParamBinding,
    pub s: Complex64,
    pub w: Complex64,
    pub power: Complex64,
    /// Explicit kernel for the general law; cataloged ids build their own.
    pub kernel: Option<HyperSeries>,
}

impl LaplaceCase {
    /// A cataloged closed-form transform; `w` and the power follow from the id.
    pub fn new(id: LaplaceId, params: ParamBinding, s: Complex64) -> Result<Self> {
        let ratio = id
            .w_ratio()
            .ok_or_else(|| Error::InvalidBinding(format!("{id} needs an explicit kernel")))?;
        let power = power_of(id, &params).unwrap_or(re(f64::NAN));
        Ok(Self {
            id,
            params,
            s,
            w: s * ratio,
            power,
            kernel: None,
        })
    }

    /// The general law for an explicit kernel. `id` selects the shape check:
    /// `lap.1f1`, `lap.2f2` and `lap.3f3` insist on `p = q = 1, 2, 3`.
    pub fn general(id: LaplaceId, v: Complex64, s: Complex64, w: Complex64, kernel: HyperSeries) -> Result<Self> {
        let shape = match id {
            LaplaceId::General => None,
            LaplaceId::Lap1F1 => Some(1),
            LaplaceId::Lap2F2 => Some(2),
            LaplaceId::Lap3F3 => Some(3),
            _ => return Err(Error::InvalidBinding(format!("{id} is a cataloged closed form"))),
        };
        if let Some(n) = shape {
            if kernel.p() != n || kernel.q() != n {
                return Err(Error::InvalidBinding(format!(
                    "{id} needs a {n}F{n} kernel, got {}F{}",
                    kernel.p(),
                    kernel.q()
                )));
            }
        }
        Ok(Self {
            id,
            params: ParamBinding::new(),
            s,
            w,
            power: v,
            kernel: Some(kernel.with_argument(w)),
        })
    }
}

fn power_of(id: LaplaceId, p: &ParamBinding) -> Option<Complex64> {
    match id {
        LaplaceId::Gauss2 | LaplaceId::Kummer | LaplaceId::Gauss2X | LaplaceId::KummerX => p.get(B),
        LaplaceId::Bailey | LaplaceId::BaileyX => p.get(A).map(|a| 1.0 - a),
        LaplaceId::Watson
        | LaplaceId::Dixon
        | LaplaceId::Whipple
        | LaplaceId::Watson1X
        | LaplaceId::Watson2X
        | LaplaceId::DixonX
        | LaplaceId::WhippleX => p.get(C),
        _ => None,
    }
}

/// `(power, kernel)` of the left-hand integral; the kernel's argument is `w`.
pub fn lhs_integrand(case: &LaplaceCase) -> Result<(Complex64, HyperSeries)> {
    if let Some(kernel) = &case.kernel {
        return Ok((case.power, kernel.with_argument(case.w)));
    }
    let p = &case.params;
    let get = |s| p.require(s);
    let one = re(1.0);
    let (num, den) = match case.id {
        LaplaceId::Gauss2 => {
            let (a, b) = (get(A)?, get(B)?);
            (vec![a], vec![(a + b + 1.0) * 0.5])
        }
        LaplaceId::Bailey => (vec![get(A)?], vec![get(C)?]),
        LaplaceId::Kummer => {
            let (a, b) = (get(A)?, get(B)?);
            (vec![a], vec![a - b + 1.0])
        }
        LaplaceId::Watson => {
            let (a, b, c) = (get(A)?, get(B)?, get(C)?);
            (vec![a, b], vec![(a + b + 1.0) * 0.5, c * 2.0])
        }
        LaplaceId::Dixon => {
            let (a, b, c) = (get(A)?, get(B)?, get(C)?);
            (vec![a, b], vec![a - b + 1.0, a - c + 1.0])
        }
        LaplaceId::Whipple => (vec![get(A)?, get(B)?], vec![get(D)?, get(E)?]),
        LaplaceId::Gauss2X => {
            let (a, b, d) = (get(A)?, get(B)?, get(D)?);
            (vec![a, d + 1.0], vec![(a + b + 3.0) * 0.5, d])
        }
        LaplaceId::BaileyX => {
            let (a, c, d) = (get(A)?, get(C)?, get(D)?);
            (vec![a, d + 1.0], vec![c + 1.0, d])
        }
        LaplaceId::KummerX => {
            let (a, b, d) = (get(A)?, get(B)?, get(D)?);
            (vec![a, d + 1.0], vec![a - b + 2.0, d])
        }
        LaplaceId::Watson1X => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            (vec![a, b, d + 1.0], vec![(a + b + 1.0) * 0.5, c * 2.0 + 1.0, d])
        }
        LaplaceId::Watson2X => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            (vec![a, b, d + 1.0], vec![(a + b + 3.0) * 0.5, c * 2.0, d])
        }
        LaplaceId::DixonX => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            (vec![a, b, d + 1.0], vec![a - b + 2.0, a - c + 1.0, d])
        }
        LaplaceId::WhippleX => {
            let (a, c, d, e) = (get(A)?, get(C)?, get(D)?, get(E)?);
            (vec![a, one - a, d + 1.0], vec![e + 1.0, c * 2.0 - e + 1.0, d])
        }
        LaplaceId::General | LaplaceId::Lap1F1 | LaplaceId::Lap2F2 | LaplaceId::Lap3F3 => {
            return Err(Error::InvalidBinding(format!("{} needs an explicit kernel", case.id)))
        }
    };
    let power = power_of(case.id, p).expect("required symbols bound");
    Ok((power, HyperSeries::new(num, den, case.w)?))
}

/// Checks the conditions under which the general law holds.
fn law_conditions(v: Complex64, s: Complex64, w: Complex64, kernel: &HyperSeries) -> Validity {
    require_re_positive(v, "Re(v)<=0")?;
    require_re_positive(s, "Re(s)<=0")?;
    let (p, q) = (kernel.p(), kernel.q());
    if w == Complex64::new(0.0, 0.0) || p < q {
        return Ok(());
    }
    if p > q {
        return Err(Rejection::new(RejectKind::Condition, "p>q"));
    }
    if s.re > w.re {
        return Ok(());
    }
    if p > 0 && (s - w).norm() <= CONSTRAINT_TOL * s.norm() {
        return require_re_positive(kernel.excess() - v, "Re(sum(b)-sum(a)-v)<=0");
    }
    Err(Rejection::new(RejectKind::Condition, "Re(s)<=Re(w)"))
}

/// `Γ(v) s^{-v} p+1Fq(v, a; b; w/s)`.
pub fn transform_rhs_series(
    v: Complex64,
    s: Complex64,
    w: Complex64,
    kernel: &HyperSeries,
    tol: f64,
) -> Result<SeriesResult> {
    law_conditions(v, s, w, kernel)?;
    let spec = kernel.with_leading_numerator(v, w / s)?;
    let mut r = match pfq::eval(&spec, tol, pfq::DEFAULT_MAX_TERMS) {
        Ok(r) => r,
        Err(Error::MaxTermsExceeded { best }) => *best,
        Err(e) => return Err(e),
    };
    let factor = crate::gamma::gamma(v)? * cpow(s, -v);
    r.value *= factor;
    r.tail_estimate *= factor.norm();
    Ok(r)
}

/// Transformed series `p+1Fq(v, a; b; w/s)` of a case.
pub fn transformed_series(case: &LaplaceCase) -> Result<HyperSeries> {
    let (v, kernel) = lhs_integrand(case)?;
    kernel.with_leading_numerator(v, case.w / case.s)
}

fn degenerate(id: LaplaceId, p: &ParamBinding) -> Validity {
    if let Some(sum) = id.summation() {
        return summation::degenerate(sum, p);
    }
    Ok(())
}

pub(crate) fn degeneracy_gap(id: LaplaceId, p: &ParamBinding) -> f64 {
    id.summation()
        .map_or(f64::INFINITY, |sum| summation::degeneracy_gap(sum, p))
}

/// Printed conditions of each transform, the inherited conditions of the
/// underlying summation theorem, and convergence of the transformed series.
pub fn validity(case: &LaplaceCase) -> Validity {
    let id = case.id;
    let p = &case.params;
    if !id.is_closed_form() {
        let kernel = case
            .kernel
            .as_ref()
            .ok_or_else(|| Rejection::new(RejectKind::Binding, "missing kernel"))?;
        return law_conditions(case.power, case.s, case.w, kernel);
    }
    degenerate(id, p)?;
    p.check_exact(id.required())
        .map_err(|reason| Rejection::new(RejectKind::Binding, reason))?;
    let get = |s| p.get(s).expect("binding checked");
    require_re_positive(case.s, "Re(s)<=0")?;
    match id {
        LaplaceId::Gauss2 | LaplaceId::Kummer | LaplaceId::Gauss2X | LaplaceId::KummerX => {
            require_re_positive(get(B), "Re(b)<=0")?
        }
        LaplaceId::Bailey | LaplaceId::BaileyX => require_re_positive(1.0 - get(A), "Re(1-a)<=0")?,
        _ => require_re_positive(get(C), "Re(c)<=0")?,
    }
    match id {
        LaplaceId::Watson => require_re_positive(get(C) * 2.0 - get(A) - get(B) + 1.0, "Re(2c-a-b)<=-1")?,
        LaplaceId::Dixon => require_re_positive(get(A) - get(B) * 2.0 - get(C) * 2.0 + 2.0, "Re(a-2b-2c)<=-2")?,
        LaplaceId::Whipple => {
            if (get(A) + get(B) - 1.0).norm() > CONSTRAINT_TOL {
                return Err(Rejection::new(RejectKind::Condition, "a+b!=1"));
            }
            if (get(D) + get(E) - get(C) * 2.0 - 1.0).norm() > CONSTRAINT_TOL {
                return Err(Rejection::new(RejectKind::Condition, "d+e!=1+2c"));
            }
        }
        _ => {}
    }
    if let Some(sum) = id.summation() {
        summation::printed_conditions(sum, p)?;
    }
    let series = transformed_series(case).map_err(|e| Rejection::new(RejectKind::Condition, e.to_string()))?;
    if !classify(&series).converges() {
        return Err(Rejection::new(RejectKind::Divergent, "transformed series diverges"));
    }
    Ok(())
}

/// Closed-form expression without validity checks.
pub fn closed_form_expr(case: &LaplaceCase) -> Result<ClosedForm> {
    let id = case.id;
    let s = case.s;
    if let Some(sum) = id.summation() {
        let v = case.power;
        let base = summation::closed_form_expr(sum, &case.params, DixonVariant::default())?;
        return Ok(base.scaled(cpow(s, -v), &[v], &[]));
    }
    classical_expr(id, &case.params, s)
}

fn classical_expr(id: LaplaceId, p: &ParamBinding, s: Complex64) -> Result<ClosedForm> {
    let get = |sym| p.require(sym);
    let half = re(0.5);
    let cf = match id {
        LaplaceId::Gauss2 => {
            let (a, b) = (get(A)?, get(B)?);
            ClosedForm::single(
                cpow(s, -b),
                [half, b, a * 0.5 + b * 0.5 + 0.5],
                [a * 0.5 + 0.5, b * 0.5 + 0.5],
            )
        }
        LaplaceId::Bailey => {
            let (a, c) = (get(A)?, get(C)?);
            ClosedForm::single(
                cpow(s, a - 1.0),
                [1.0 - a, c * 0.5, c * 0.5 + 0.5],
                [a * 0.5 + c * 0.5, c * 0.5 - a * 0.5 + 0.5],
            )
        }
        LaplaceId::Kummer => {
            let (a, b) = (get(A)?, get(B)?);
            ClosedForm::single(
                cpow(s, -b) * re(2.0).powc(-a),
                [half, b, a - b + 1.0],
                [a * 0.5 + 0.5, a * 0.5 - b + 1.0],
            )
        }
        LaplaceId::Watson => {
            let (a, b, c) = (get(A)?, get(B)?, get(C)?);
            ClosedForm::single(
                cpow(s, -c),
                [half, c, c + 0.5, a * 0.5 + b * 0.5 + 0.5, c - a * 0.5 - b * 0.5 + 0.5],
                [a * 0.5 + 0.5, b * 0.5 + 0.5, c - a * 0.5 + 0.5, c - b * 0.5 + 0.5],
            )
        }
        LaplaceId::Dixon => {
            let (a, b, c) = (get(A)?, get(B)?, get(C)?);
            ClosedForm::single(
                cpow(s, -c),
                [c, a * 0.5 + 1.0, a - b + 1.0, a - c + 1.0, a * 0.5 - b - c + 1.0],
                [a + 1.0, a * 0.5 - b + 1.0, a * 0.5 - c + 1.0, a - b - c + 1.0],
            )
        }
        LaplaceId::Whipple => {
            let (a, b, c, d, e) = (get(A)?, get(B)?, get(C)?, get(D)?, get(E)?);
            ClosedForm::single(
                cpow(s, -c) * std::f64::consts::PI / re(2.0).powc(c * 2.0 - 1.0),
                [c, d, e],
                [
                    a * 0.5 + d * 0.5,
                    a * 0.5 + e * 0.5,
                    b * 0.5 + d * 0.5,
                    b * 0.5 + e * 0.5,
                ],
            )
        }
        _ => return Err(Error::InvalidBinding(format!("{id} has no closed form"))),
    };
    Ok(cf)
}

/// Closed form of a cataloged transform. Extended ids go through the
/// summation theorem; classical ids use their own printed expression.
pub fn closed_form(case: &LaplaceCase) -> Result<ClosedFormBreakdown> {
    validity(case)?;
    closed_form_expr(case)?.eval()
}

/// Independent transcription of each printed transform, used to cross-check
/// [`closed_form`].
pub fn closed_form_direct(case: &LaplaceCase) -> Result<ClosedFormBreakdown> {
    validity(case)?;
    direct_expr(case)?.eval()
}

pub fn direct_expr(case: &LaplaceCase) -> Result<ClosedForm> {
    let p = &case.params;
    let s = case.s;
    let get = |sym| p.require(sym);
    let half = re(0.5);
    let two = re(2.0);
    let zero = re(0.0);
    let cf = match case.id {
        LaplaceId::Gauss2X => {
            let (a, b, d) = (get(A)?, get(B)?, get(D)?);
            ClosedForm {
                scalar: cpow(s, -b),
                gammas: GammaRatio::new(
                    [half, b, a * 0.5 + b * 0.5 + 1.5, a * 0.5 - b * 0.5 - 0.5],
                    [a * 0.5 - b * 0.5 + 1.5],
                ),
                term1: GammaTerm::new((a + b - 1.0) * 0.5 - a * b / d, [], [a * 0.5 + 0.5, b * 0.5 + 0.5]),
                term2: GammaTerm::new((a + b + 1.0) / d - 2.0, [], [a * 0.5, b * 0.5]),
                alpha: zero,
                beta: zero,
            }
        }
        LaplaceId::BaileyX => {
            let (a, c, d) = (get(A)?, get(C)?, get(D)?);
            ClosedForm {
                scalar: cpow(s, a - 1.0) / two.powc(c),
                gammas: GammaRatio::new([half, 1.0 - a, c + 1.0], []),
                term1: GammaTerm::new(two / d, [], [a * 0.5 + c * 0.5, c * 0.5 - a * 0.5 + 0.5]),
                term2: GammaTerm::new(1.0 - c / d, [], [a * 0.5 + c * 0.5 + 0.5, c * 0.5 - a * 0.5 + 1.0]),
                alpha: zero,
                beta: zero,
            }
        }
        LaplaceId::KummerX => {
            let (a, b, d) = (get(A)?, get(B)?, get(D)?);
            ClosedForm {
                scalar: cpow(s, -b) / (two.powc(a) * (1.0 - b)),
                gammas: GammaRatio::new([half, b, a - b + 2.0], []),
                term1: GammaTerm::new((a - b + 1.0) / d - 1.0, [], [a * 0.5, a * 0.5 - b + 1.5]),
                term2: GammaTerm::new(1.0 - a / d, [], [a * 0.5 + 0.5, a * 0.5 - b + 1.0]),
                alpha: zero,
                beta: zero,
            }
        }
        LaplaceId::Watson1X => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            ClosedForm {
                scalar: cpow(s, -c) * two.powc(a + b - 2.0),
                gammas: GammaRatio::new(
                    [c, c + 0.5, a * 0.5 + b * 0.5 + 0.5, c - a * 0.5 - b * 0.5 + 0.5],
                    [half, a, b],
                ),
                term1: GammaTerm::new(re(1.0), [a * 0.5, b * 0.5], [c - a * 0.5 + 0.5, c - b * 0.5 + 0.5]),
                term2: GammaTerm::new(
                    (c * 2.0 - d) / d,
                    [a * 0.5 + 0.5, b * 0.5 + 0.5],
                    [c - a * 0.5 + 1.0, c - b * 0.5 + 1.0],
                ),
                alpha: zero,
                beta: zero,
            }
        }
        LaplaceId::Watson2X => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            let alpha = a * (c * 2.0 - a) + b * (c * 2.0 - b) - c * 2.0 + 1.0 - a * b / d * (c * 4.0 - a - b - 1.0);
            let beta = 8.0 * ((a + b + 1.0) / (d * 2.0) - 1.0);
            ClosedForm {
                scalar: cpow(s, -c) * two.powc(a + b - 2.0) / ((a - b - 1.0) * (a - b + 1.0)),
                gammas: GammaRatio::new(
                    [c, c + 0.5, a * 0.5 + b * 0.5 + 1.5, c - a * 0.5 - b * 0.5 - 0.5],
                    [half, a, b],
                ),
                term1: GammaTerm::new(alpha, [a * 0.5, b * 0.5], [c - a * 0.5 + 0.5, c - b * 0.5 + 0.5]),
                term2: GammaTerm::new(beta, [a * 0.5 + 0.5, b * 0.5 + 0.5], [c - a * 0.5, c - b * 0.5]),
                alpha,
                beta,
            }
        }
        LaplaceId::DixonX => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            let (alpha, beta) = summation::dixon_coefficients(a, b, c, d);
            ClosedForm {
                scalar: cpow(s, -c) * two.powc(-a) / (b - 1.0),
                gammas: GammaRatio::new([half, c], []),
                term1: GammaTerm::new(
                    alpha,
                    [a - b + 2.0, a - c + 1.0, a * 0.5 - b - c + 1.5],
                    [a * 0.5, a - b - c + 2.0, a * 0.5 - c + 0.5, a * 0.5 - b + 1.5],
                ),
                term2: GammaTerm::new(
                    beta / 2.0,
                    [a - b + 1.0, a - c + 1.0, a * 0.5 - b - c + 1.0],
                    [a * 0.5 + 0.5, a - b - c + 1.0, a * 0.5 - b + 1.0, a * 0.5 - c + 1.0],
                ),
                alpha,
                beta,
            }
        }
        LaplaceId::WhippleX => {
            let (a, c, d, e) = (get(A)?, get(C)?, get(D)?, get(E)?);
            ClosedForm {
                scalar: cpow(s, -c) * two.powc(-a * 2.0),
                gammas: GammaRatio::new(
                    [c, e + 1.0, e - c, c * 2.0 - e + 1.0],
                    [e - a + 1.0, e - c + 1.0, c * 2.0 - a - e + 1.0],
                ),
                term1: GammaTerm::new(
                    1.0 - (c * 2.0 - e) / d,
                    [e * 0.5 - a * 0.5 + 1.0, c - a * 0.5 - e * 0.5 + 0.5],
                    [a * 0.5 + e * 0.5, c - e * 0.5 + a * 0.5 + 0.5],
                ),
                term2: GammaTerm::new(
                    e / d - 1.0,
                    [e * 0.5 - a * 0.5 + 0.5, c - a * 0.5 - e * 0.5 + 1.0],
                    [a * 0.5 + e * 0.5 + 0.5, c - e * 0.5 + a * 0.5],
                ),
                alpha: zero,
                beta: zero,
            }
        }
        id => classical_expr(id, p, s)?,
    };
    Ok(cf)
}

/// The classical transform an extended one reduces to, and the value of
/// `d` that performs the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Specialization {
    pub source: LaplaceId,
    pub target: LaplaceId,
    pub d_rule: &'static str,
}

pub fn specialization_target(id: LaplaceId) -> Result<Specialization> {
    let (target, d_rule) = match id {
        LaplaceId::Gauss2X => (LaplaceId::Gauss2, "d=(a+b+1)/2"),
        LaplaceId::BaileyX => (LaplaceId::Bailey, "d=c"),
        LaplaceId::KummerX => (LaplaceId::Kummer, "d=1+a-b"),
        LaplaceId::Watson1X => (LaplaceId::Watson, "d=2c"),
        LaplaceId::Watson2X => (LaplaceId::Watson, "d=(a+b+1)/2"),
        LaplaceId::DixonX => (LaplaceId::Dixon, "d=1+a-b"),
        LaplaceId::WhippleX => (LaplaceId::Whipple, "d=e"),
        _ => return Err(Error::NotSpecializable(id.name().into())),
    };
    Ok(Specialization {
        source: id,
        target,
        d_rule,
    })
}

/// Applies the reduction: returns the extended binding with `d` substituted
/// and the matching binding of the classical transform. `d` in `params`, if
/// present, is ignored.
pub fn specialize(id: LaplaceId, params: &ParamBinding) -> Result<(ParamBinding, LaplaceId, ParamBinding)> {
    let spec = specialization_target(id)?;
    let get = |s| params.require(s);
    let d = match id {
        LaplaceId::Gauss2X | LaplaceId::Watson2X => (get(A)? + get(B)? + 1.0) * 0.5,
        LaplaceId::BaileyX => get(C)?,
        LaplaceId::KummerX | LaplaceId::DixonX => get(A)? - get(B)? + 1.0,
        LaplaceId::Watson1X => get(C)? * 2.0,
        LaplaceId::WhippleX => get(E)?,
        _ => unreachable!("checked by specialization_target"),
    };
    let extended = params.restricted(id.required()).with(D, d);
    let classical = if id == LaplaceId::WhippleX {
        let (a, c, e) = (get(A)?, get(C)?, get(E)?);
        ParamBinding::new()
            .with(A, a)
            .with(B, 1.0 - a)
            .with(C, c)
            .with(D, e)
            .with(E, c * 2.0 - e + 1.0)
    } else {
        params.restricted(spec.target.required())
    };
    Ok((extended, spec.target, classical))
}
