//! Parameter bindings, identity identifiers and the two-term closed-form
//! expression shared by the summation and Laplace catalogs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gamma::{gamma_ratio, pole_distance, GammaRatio};
use crate::laplace::LaplaceId;
use crate::summation::SummationId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    A,
    B,
    C,
    D,
    E,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::A, Symbol::B, Symbol::C, Symbol::D, Symbol::E];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::B => "b",
            Symbol::C => "c",
            Symbol::D => "d",
            Symbol::E => "e",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Symbol::ALL
            .into_iter()
            .find(|sym| sym.name() == s)
            .ok_or_else(|| Error::InvalidBinding(format!("unknown symbol {s}")))
    }
}

/// Values bound to the free symbols `a … e` of an identity.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ParamBinding {
    values: [Option<Complex64>; 5],
}

impl ParamBinding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, sym: Symbol, value: Complex64) -> Self {
        self.set(sym, value);
        self
    }

    pub fn with_real(self, sym: Symbol, value: f64) -> Self {
        self.with(sym, Complex64::new(value, 0.0))
    }

    /// Binding from `(symbol, real value)` pairs.
    pub fn real(pairs: &[(Symbol, f64)]) -> Self {
        pairs.iter().fold(Self::new(), |b, &(s, v)| b.with_real(s, v))
    }

    pub fn set(&mut self, sym: Symbol, value: Complex64) {
        self.values[sym.index()] = Some(value);
    }

    pub fn get(&self, sym: Symbol) -> Option<Complex64> {
        self.values[sym.index()]
    }

    pub fn require(&self, sym: Symbol) -> Result<Complex64> {
        self.get(sym)
            .ok_or_else(|| Error::InvalidBinding(format!("missing parameter {sym}")))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        Symbol::ALL.into_iter().filter(|s| self.get(*s).is_some())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, Complex64)> + '_ {
        Symbol::ALL.into_iter().filter_map(|s| self.get(s).map(|v| (s, v)))
    }

    /// Checks that exactly `required` is bound.
    pub fn check_exact(&self, required: &[Symbol]) -> std::result::Result<(), String> {
        for s in required {
            if self.get(*s).is_none() {
                return Err(format!("missing parameter {s}"));
            }
        }
        for s in self.symbols() {
            if !required.contains(&s) {
                return Err(format!("unexpected parameter {s}"));
            }
        }
        Ok(())
    }

    /// Keeps only the listed symbols.
    pub fn restricted(&self, keep: &[Symbol]) -> Self {
        let mut out = Self::new();
        for s in keep {
            if let Some(v) = self.get(*s) {
                out.set(*s, v);
            }
        }
        out
    }
}

#[derive(Serialize)]
struct ComplexRecord {
    re: f64,
    im: f64,
}

impl Serialize for ParamBinding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.symbols().count()))?;
        for (s, v) in self.iter() {
            map.serialize_entry(s.name(), &ComplexRecord { re: v.re, im: v.im })?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ParamBinding {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Rec {
            re: f64,
            im: f64,
        }
        let map = BTreeMap::<Symbol, Rec>::deserialize(deserializer)?;
        Ok(map
            .into_iter()
            .fold(Self::new(), |b, (s, r)| b.with(s, Complex64::new(r.re, r.im))))
    }
}

/// Any cataloged identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Sum(SummationId),
    Lap(LaplaceId),
}

impl IdentityId {
    /// The twenty closed-form identities: seven extended summation theorems,
    /// six classical and seven extended Laplace transforms.
    pub fn catalog() -> Vec<IdentityId> {
        SummationId::ALL
            .into_iter()
            .map(IdentityId::Sum)
            .chain(LaplaceId::CLOSED_FORMS.into_iter().map(IdentityId::Lap))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Sum(id) => id.name(),
            IdentityId::Lap(id) => id.name(),
        }
    }

    pub fn required(self) -> &'static [Symbol] {
        match self {
            IdentityId::Sum(id) => id.required(),
            IdentityId::Lap(id) => id.required(),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(id) = s.parse::<SummationId>() {
            return Ok(IdentityId::Sum(id));
        }
        if let Ok(id) = s.parse::<LaplaceId>() {
            return Ok(IdentityId::Lap(id));
        }
        Err(Error::InvalidBinding(format!("unknown identity {s}")))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl From<SummationId> for IdentityId {
    fn from(id: SummationId) -> Self {
        IdentityId::Sum(id)
    }
}

impl From<LaplaceId> for IdentityId {
    fn from(id: LaplaceId) -> Self {
        IdentityId::Lap(id)
    }
}

/// One brace term `coef · Γ(num…)/Γ(den…)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GammaTerm {
    pub coef: Complex64,
    pub gammas: GammaRatio,
}

impl GammaTerm {
    pub fn new(coef: Complex64, num: impl Into<Vec<Complex64>>, den: impl Into<Vec<Complex64>>) -> Self {
        Self {
            coef,
            gammas: GammaRatio::new(num, den),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    fn eval(&self) -> Result<Complex64> {
        if self.coef == Complex64::new(0.0, 0.0) && self.gammas.num.is_empty() && self.gammas.den.is_empty() {
            return Ok(self.coef);
        }
        Ok(self.coef * gamma_ratio(&self.gammas)?)
    }
}

/// `scalar · Γ-block · (term1 + term2)`, the common shape of every
/// right-hand side in the catalogs. Single-term forms leave `term2` zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub scalar: Complex64,
    pub gammas: GammaRatio,
    pub term1: GammaTerm,
    pub term2: GammaTerm,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl ClosedForm {
    pub fn single(scalar: Complex64, num: impl Into<Vec<Complex64>>, den: impl Into<Vec<Complex64>>) -> Self {
        Self {
            scalar,
            gammas: GammaRatio::new(num, den),
            term1: GammaTerm::new(Complex64::new(1.0, 0.0), [], []),
            term2: GammaTerm::zero(),
            alpha: Complex64::new(0.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// Every gamma argument appearing anywhere in the expression.
    pub fn gamma_args(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.gammas
            .args()
            .chain(self.term1.gammas.args())
            .chain(self.term2.gammas.args())
    }

    /// Smallest distance from any gamma argument to a pole.
    pub fn pole_clearance(&self) -> f64 {
        self.gamma_args().map(pole_distance).fold(f64::INFINITY, f64::min)
    }

    /// Multiplies the prefactor by `extra · Γ(num…)/Γ(den…)`.
    pub fn scaled(mut self, extra: Complex64, num: &[Complex64], den: &[Complex64]) -> Self {
        self.scalar *= extra;
        let mut n = num.to_vec();
        n.extend_from_slice(&self.gammas.num);
        let mut d = den.to_vec();
        d.extend_from_slice(&self.gammas.den);
        self.gammas = GammaRatio::new(n, d);
        self
    }

    pub fn eval(&self) -> Result<ClosedFormBreakdown> {
        let prefactor = self.scalar * gamma_ratio(&self.gammas)?;
        let term1 = self.term1.eval()?;
        let term2 = self.term2.eval()?;
        let value = prefactor * (term1 + term2);
        if !value.is_finite() {
            return Err(Error::Overflow(value.norm().ln()));
        }
        Ok(ClosedFormBreakdown {
            prefactor,
            term1,
            term2,
            alpha: self.alpha,
            beta: self.beta,
            value,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormBreakdown {
    pub prefactor: Complex64,
    pub term1: Complex64,
    pub term2: Complex64,
    /// Zero for identities without α/β coefficients.
    pub alpha: Complex64,
    pub beta: Complex64,
    pub value: Complex64,
}

/// Why a binding was refused by a validity predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub kind: RejectKind,
    /// Short machine-readable reason, e.g. `Re(d)<=0` or `degenerate b=1`.
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectKind {
    Binding,
    Condition,
    Degenerate,
    Divergent,
}

impl Rejection {
    pub fn new(kind: RejectKind, reason: impl Into<String>) -> Self {
        Self {
            kind,
            reason: reason.into(),
        }
    }
}

impl From<Rejection> for Error {
    fn from(r: Rejection) -> Self {
        match r.kind {
            RejectKind::Binding => Error::InvalidBinding(r.reason),
            RejectKind::Degenerate => Error::Degenerate(r.reason),
            RejectKind::Condition | RejectKind::Divergent => Error::Validity(r.reason),
        }
    }
}

pub(crate) type Validity = std::result::Result<(), Rejection>;

pub(crate) fn require_re_positive(value: Complex64, reason: &str) -> Validity {
    if value.re > 0.0 {
        Ok(())
    } else {
        Err(Rejection::new(RejectKind::Condition, reason))
    }
}

/// Absolute tolerance used to flag exactly degenerate parameter values.
pub(crate) const DEGENERATE_TOL: f64 = 1e-12;

pub(crate) fn require_not(value: Complex64, forbidden: f64, reason: &str) -> Validity {
    if (value - forbidden).norm() < DEGENERATE_TOL {
        Err(Rejection::new(RejectKind::Degenerate, reason))
    } else {
        Ok(())
    }
}
