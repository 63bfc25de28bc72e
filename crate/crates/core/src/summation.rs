//! The seven extended summation theorems: a ₃F₂ at `½` or `-1`, or a ₄F₃ at
//! `1`, carrying an extra `d + 1` / `d` parameter pair, evaluated in closed
//! form as a sum of two gamma-ratio terms.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{
    require_not, require_re_positive, ClosedForm, ClosedFormBreakdown, GammaTerm, ParamBinding, RejectKind, Rejection,
    Symbol, Validity,
};
use crate::pfq::{classify, HyperSeries};
use crate::re;

use Symbol::{A, B, C, D, E};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SummationId {
    Gauss2X,
    BaileyX,
    KummerX,
    Watson1X,
    Watson2X,
    DixonX,
    WhippleX,
}

/// The two printed forms of the second Dixon denominator: `Γ(1+½a−b)Γ(1+½a−c)`
/// (as in the ₃F₃ transform) and `Γ(1+½a−c)Γ(1+½a−c)` (as in the summation
/// theorem).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum DixonVariant {
    #[default]
    Eq33,
    Eq121,
}

impl SummationId {
    pub const ALL: [SummationId; 7] = [
        SummationId::Gauss2X,
        SummationId::BaileyX,
        SummationId::KummerX,
        SummationId::Watson1X,
        SummationId::Watson2X,
        SummationId::DixonX,
        SummationId::WhippleX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SummationId::Gauss2X => "sum.gauss2x",
            SummationId::BaileyX => "sum.baileyx",
            SummationId::KummerX => "sum.kummerx",
            SummationId::Watson1X => "sum.watson1x",
            SummationId::Watson2X => "sum.watson2x",
            SummationId::DixonX => "sum.dixonx",
            SummationId::WhippleX => "sum.whipplex",
        }
    }

    pub fn required(self) -> &'static [Symbol] {
        match self {
            SummationId::Gauss2X | SummationId::KummerX => &[A, B, D],
            SummationId::BaileyX => &[A, C, D],
            SummationId::Watson1X | SummationId::Watson2X | SummationId::DixonX => &[A, B, C, D],
            SummationId::WhippleX => &[A, C, D, E],
        }
    }

    /// Argument of the left-hand series.
    pub fn argument(self) -> f64 {
        match self {
            SummationId::Gauss2X | SummationId::BaileyX => 0.5,
            SummationId::KummerX => -1.0,
            _ => 1.0,
        }
    }

    pub fn unit_argument(self) -> bool {
        self.argument() == 1.0
    }
}

impl fmt::Display for SummationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SummationId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SummationId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidBinding(format!("unknown summation identity {s}")))
    }
}

fn h(x: f64) -> Complex64 {
    re(x)
}

/// Left-hand series of the theorem.
pub fn lhs_spec(id: SummationId, p: &ParamBinding) -> Result<HyperSeries> {
    let get = |s| p.require(s);
    let z = h(id.argument());
    let one = h(1.0);
    let (num, den) = match id {
        SummationId::Gauss2X => {
            let (a, b, d) = (get(A)?, get(B)?, get(D)?);
            (vec![a, b, d + 1.0], vec![(a + b + 3.0) * 0.5, d])
        }
        SummationId::BaileyX => {
            let (a, c, d) = (get(A)?, get(C)?, get(D)?);
            (vec![a, one - a, d + 1.0], vec![c + 1.0, d])
        }
        SummationId::KummerX => {
            let (a, b, d) = (get(A)?, get(B)?, get(D)?);
            (vec![a, b, d + 1.0], vec![a - b + 2.0, d])
        }
        SummationId::Watson1X => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            (vec![a, b, c, d + 1.0], vec![(a + b + 1.0) * 0.5, c * 2.0 + 1.0, d])
        }
        SummationId::Watson2X => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            (vec![a, b, c, d + 1.0], vec![(a + b + 3.0) * 0.5, c * 2.0, d])
        }
        SummationId::DixonX => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            (vec![a, b, c, d + 1.0], vec![a - b + 2.0, a - c + 1.0, d])
        }
        SummationId::WhippleX => {
            let (a, c, d, e) = (get(A)?, get(C)?, get(D)?, get(E)?);
            (vec![a, one - a, c, d + 1.0], vec![e + 1.0, c * 2.0 - e + 1.0, d])
        }
    };
    HyperSeries::new(num, den, z)
}

/// Two-term gamma expression of the right-hand side, without validity checks.
pub fn closed_form_expr(id: SummationId, p: &ParamBinding, variant: DixonVariant) -> Result<ClosedForm> {
    let get = |s| p.require(s);
    let half = h(0.5);
    let two = h(2.0);
    let cf = match id {
        SummationId::Gauss2X => {
            let (a, b, d) = (get(A)?, get(B)?, get(D)?);
            ClosedForm {
                scalar: h(1.0),
                gammas: crate::gamma::GammaRatio::new(
                    [half, a * 0.5 + b * 0.5 + 1.5, a * 0.5 - b * 0.5 - 0.5],
                    [a * 0.5 - b * 0.5 + 1.5],
                ),
                term1: GammaTerm::new((a + b - 1.0) * 0.5 - a * b / d, [], [a * 0.5 + 0.5, b * 0.5 + 0.5]),
                term2: GammaTerm::new((a + b + 1.0) / d - 2.0, [], [a * 0.5, b * 0.5]),
                alpha: h(0.0),
                beta: h(0.0),
            }
        }
        SummationId::BaileyX => {
            let (a, c, d) = (get(A)?, get(C)?, get(D)?);
            ClosedForm {
                scalar: two.powc(-c),
                gammas: crate::gamma::GammaRatio::new([half, c + 1.0], []),
                term1: GammaTerm::new(two / d, [], [a * 0.5 + c * 0.5, c * 0.5 - a * 0.5 + 0.5]),
                term2: GammaTerm::new(1.0 - c / d, [], [a * 0.5 + c * 0.5 + 0.5, c * 0.5 - a * 0.5 + 1.0]),
                alpha: h(0.0),
                beta: h(0.0),
            }
        }
        SummationId::KummerX => {
            let (a, b, d) = (get(A)?, get(B)?, get(D)?);
            ClosedForm {
                scalar: 1.0 / (two.powc(a) * (1.0 - b)),
                gammas: crate::gamma::GammaRatio::new([half, a - b + 2.0], []),
                term1: GammaTerm::new((a - b + 1.0) / d - 1.0, [], [a * 0.5, a * 0.5 - b + 1.5]),
                term2: GammaTerm::new(1.0 - a / d, [], [a * 0.5 + 0.5, a * 0.5 - b + 1.0]),
                alpha: h(0.0),
                beta: h(0.0),
            }
        }
        SummationId::Watson1X => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            ClosedForm {
                scalar: two.powc(a + b - 2.0),
                gammas: crate::gamma::GammaRatio::new(
                    [c + 0.5, a * 0.5 + b * 0.5 + 0.5, c - a * 0.5 - b * 0.5 + 0.5],
                    [half, a, b],
                ),
                term1: GammaTerm::new(h(1.0), [a * 0.5, b * 0.5], [c - a * 0.5 + 0.5, c - b * 0.5 + 0.5]),
                term2: GammaTerm::new(
                    (c * 2.0 - d) / d,
                    [a * 0.5 + 0.5, b * 0.5 + 0.5],
                    [c - a * 0.5 + 1.0, c - b * 0.5 + 1.0],
                ),
                alpha: h(0.0),
                beta: h(0.0),
            }
        }
        SummationId::Watson2X => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            let alpha = a * (c * 2.0 - a) + b * (c * 2.0 - b) - c * 2.0 + 1.0 - a * b / d * (c * 4.0 - a - b - 1.0);
            let beta = 8.0 * ((a + b + 1.0) / (d * 2.0) - 1.0);
            ClosedForm {
                scalar: two.powc(a + b - 2.0) / ((a - b - 1.0) * (a - b + 1.0)),
                gammas: crate::gamma::GammaRatio::new(
                    [c + 0.5, a * 0.5 + b * 0.5 + 1.5, c - a * 0.5 - b * 0.5 - 0.5],
                    [half, a, b],
                ),
                term1: GammaTerm::new(alpha, [a * 0.5, b * 0.5], [c - a * 0.5 + 0.5, c - b * 0.5 + 0.5]),
                term2: GammaTerm::new(beta, [a * 0.5 + 0.5, b * 0.5 + 0.5], [c - a * 0.5, c - b * 0.5]),
                alpha,
                beta,
            }
        }
        SummationId::DixonX => {
            let (a, b, c, d) = (get(A)?, get(B)?, get(C)?, get(D)?);
            let (alpha, beta) = dixon_coefficients(a, b, c, d);
            let second_den = match variant {
                DixonVariant::Eq33 => [a * 0.5 + 0.5, a - b - c + 1.0, a * 0.5 - b + 1.0, a * 0.5 - c + 1.0],
                DixonVariant::Eq121 => [a * 0.5 + 0.5, a - b - c + 1.0, a * 0.5 - c + 1.0, a * 0.5 - c + 1.0],
            };
            ClosedForm {
                scalar: two.powc(-a) / (b - 1.0),
                gammas: crate::gamma::GammaRatio::new([half], []),
                term1: GammaTerm::new(
                    alpha,
                    [a - b + 2.0, a - c + 1.0, a * 0.5 - b - c + 1.5],
                    [a * 0.5, a - b - c + 2.0, a * 0.5 - c + 0.5, a * 0.5 - b + 1.5],
                ),
                term2: GammaTerm::new(
                    beta * 0.5,
                    [a - b + 1.0, a - c + 1.0, a * 0.5 - b - c + 1.0],
                    second_den,
                ),
                alpha,
                beta,
            }
        }
        SummationId::WhippleX => {
            let (a, c, d, e) = (get(A)?, get(C)?, get(D)?, get(E)?);
            ClosedForm {
                scalar: two.powc(-a * 2.0),
                gammas: crate::gamma::GammaRatio::new(
                    [e + 1.0, e - c, c * 2.0 - e + 1.0],
                    [e - a + 1.0, e - c + 1.0, c * 2.0 - a - e + 1.0],
                ),
                term1: GammaTerm::new(
                    1.0 - (c * 2.0 - e) / d,
                    [e * 0.5 - a * 0.5 + 1.0, c - a * 0.5 - e * 0.5 + 0.5],
                    [a * 0.5 + e * 0.5, c + a * 0.5 - e * 0.5 + 0.5],
                ),
                term2: GammaTerm::new(
                    e / d - 1.0,
                    [e * 0.5 - a * 0.5 + 0.5, c - a * 0.5 - e * 0.5 + 1.0],
                    [a * 0.5 + e * 0.5 + 0.5, c + a * 0.5 - e * 0.5],
                ),
                alpha: h(0.0),
                beta: h(0.0),
            }
        }
    };
    Ok(cf)
}

pub(crate) fn dixon_coefficients(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let alpha = 1.0 - (a - b + 1.0) / d;
    let beta = (a - b + 1.0) / (a - b - c + 1.0) * (a / d * (a - b - c * 2.0 + 1.0) - 2.0 * (a * 0.5 - b - c + 1.0));
    (alpha, beta)
}

/// Parameter values at which the closed form has a removable factor the
/// theorem does not define. Only the symbols that are bound are inspected.
pub(crate) fn degenerate(id: SummationId, p: &ParamBinding) -> Validity {
    match id {
        SummationId::KummerX => {
            if let Some(b) = p.get(B) {
                require_not(b, 1.0, "degenerate b=1")?;
            }
        }
        SummationId::DixonX => {
            if let Some(b) = p.get(B) {
                require_not(b, 1.0, "degenerate b=1")?;
            }
            if let (Some(a), Some(b), Some(c)) = (p.get(A), p.get(B), p.get(C)) {
                require_not(a - b - c + 1.0, 0.0, "degenerate 1+a-b-c=0")?;
            }
        }
        SummationId::Watson2X => {
            if let (Some(a), Some(b)) = (p.get(A), p.get(B)) {
                require_not(a - b, 1.0, "degenerate a-b=1")?;
                require_not(a - b, -1.0, "degenerate a-b=-1")?;
            }
        }
        _ => {}
    }
    Ok(())
}

/// Distance from the degenerate set, for samplers that keep a margin.
pub(crate) fn degeneracy_gap(id: SummationId, p: &ParamBinding) -> f64 {
    let v = |s| p.get(s).unwrap_or(re(f64::NAN));
    match id {
        SummationId::KummerX => (v(B) - 1.0).norm(),
        SummationId::DixonX => (v(B) - 1.0).norm().min((v(A) - v(B) - v(C) + 1.0).norm()),
        SummationId::Watson2X => {
            let t = v(A) - v(B);
            (t - 1.0).norm().min((t + 1.0).norm())
        }
        _ => f64::INFINITY,
    }
}

/// Printed side conditions of each theorem.
pub(crate) fn printed_conditions(id: SummationId, p: &ParamBinding) -> Validity {
    let get = |s| p.get(s).expect("binding checked");
    require_re_positive(get(D), "Re(d)<=0")?;
    match id {
        SummationId::Watson1X | SummationId::Watson2X => {
            require_re_positive(get(C) * 2.0 - get(A) - get(B) + 1.0, "Re(2c-a-b)<=-1")
        }
        SummationId::DixonX => require_re_positive(get(A) - get(B) * 2.0 - get(C) * 2.0 + 2.0, "Re(a-2b-2c)<=-2"),
        SummationId::WhippleX => require_re_positive(get(C), "Re(c)<=0"),
        _ => Ok(()),
    }
}

/// Checks the binding, the degenerate exclusions, the printed conditions
/// and convergence of the left-hand series, in that order of severity.
pub fn validity(id: SummationId, p: &ParamBinding) -> Validity {
    degenerate(id, p)?;
    p.check_exact(id.required())
        .map_err(|reason| Rejection::new(RejectKind::Binding, reason))?;
    printed_conditions(id, p)?;
    let spec = lhs_spec(id, p).map_err(|e| Rejection::new(RejectKind::Condition, e.to_string()))?;
    if !classify(&spec).converges() {
        return Err(Rejection::new(RejectKind::Divergent, "series diverges"));
    }
    Ok(())
}

/// Right-hand side for a valid binding.
pub fn rhs_closed_form(id: SummationId, p: &ParamBinding) -> Result<ClosedFormBreakdown> {
    rhs_closed_form_variant(id, p, DixonVariant::default())
}

pub fn rhs_closed_form_variant(
    id: SummationId,
    p: &ParamBinding,
    variant: DixonVariant,
) -> Result<ClosedFormBreakdown> {
    validity(id, p)?;
    closed_form_expr(id, p, variant)?.eval()
}
