//! Numerical Laplace transforms `∫₀^∞ e^{-st} t^{v-1} pFq(wt) dt`.
//!
//! After `u = st` the integral is `s^{-v} ∫₀^∞ e^{-u} u^{v-1} pFq(κu) du`
//! with `κ = w/s`. The range is cut into `[0, 1]` and dyadic panels
//! `[2^k, 2^{k+1}]`, each integrated with adaptive 21-point Gauss–Kronrod.
//! On `[0, 1]` the substitution `u = x^{1/Re v}` removes the `u^{v-1}`
//! endpoint singularity when `Re v < 1`.
//!
//! Beyond the last panel the integrand either decays exponentially (`κ ≠ 1`)
//! or, for `κ = 1`, algebraically like `u^ρ` with `ρ = v - 1 + Σa - Σb`. In
//! the algebraic case `u^{-ρ} f(u)` is a smooth function of `1/u`; it is
//! interpolated on `[U, 10U]` and integrated to infinity in closed form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::cpow;
use crate::pfq::{self, HyperSeries};

pub const DEFAULT_TOL: f64 = 1e-7;

/// Integrals closer than this to the algebraic divergence threshold are refused.
const SLOW_DECAY_LIMIT: f64 = -1.05;
const INNER_TOL: f64 = 1e-15;
const MAX_INTERVALS: usize = 400;
const MAX_PANEL_EXP: i32 = 18;

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailMethod {
    ExpDecay,
    PowerLawExtrapolation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: Complex64,
    pub abs_err_est: f64,
    pub nodes_used: u64,
    pub tail_method: TailMethod,
    /// Contribution beyond the cutoff, already included in `value`.
    pub tail_contribution: Complex64,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

fn gk21<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut f1 = [Complex64::new(0.0, 0.0); 10];
    let mut f2 = [Complex64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = h * XGK[j];
        f1[j] = f(c - dx)?;
        f2[j] = f(c + dx)?;
        kron += (f1[j] + f2[j]) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1[j] + f2[j]) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        asc += WGK[j] * ((f1[j] - mean).norm() + (f2[j] - mean).norm());
    }
    let asc = asc * h.abs();
    let value = kron * h;
    let diff = ((kron - gauss) * h).norm();
    let mut err = diff;
    if asc > 0.0 && diff > 0.0 {
        err = asc * (200.0 * diff / asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * value.norm();
    Ok(Segment {
        a,
        b,
        value,
        err: err.max(roundoff),
    })
}

struct Adaptive {
    value: Complex64,
    err: f64,
    nodes: u64,
}

/// Global-bisection adaptive integration over consecutive intervals. The
/// interval with the largest error is split first; ties keep list order, so
/// the result is deterministic.
fn adaptive<F>(mut f: F, breaks: &[f64], tol_rel: f64, tol_abs: f64) -> Result<Adaptive>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut segs = Vec::with_capacity(breaks.len() * 4);
    for w in breaks.windows(2) {
        segs.push(gk21(&mut f, w[0], w[1])?);
    }
    let mut nodes = 21 * segs.len() as u64;
    loop {
        let value: Complex64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.err).sum();
        if err <= tol_abs.max(tol_rel * value.norm()) || segs.len() >= MAX_INTERVALS {
            return Ok(Adaptive { value, err, nodes });
        }
        let (idx, _) =
            segs.iter().enumerate().fold(
                (0, f64::NEG_INFINITY),
                |best, (i, s)| if s.err > best.1 { (i, s.err) } else { best },
            );
        let s = segs[idx];
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            return Ok(Adaptive { value, err, nodes });
        }
        let left = gk21(&mut f, s.a, mid)?;
        let right = gk21(&mut f, mid, s.b)?;
        nodes += 42;
        segs[idx] = left;
        segs.insert(idx + 1, right);
    }
}

/// `e^{-u} u^{v-1} F(κu)` evaluated without forming `e^{-u}` or `F` separately.
struct Integrand<'a> {
    spec: &'a HyperSeries,
    kappa: Complex64,
    v: Complex64,
}

impl Integrand<'_> {
    /// `e^{-u} F(κu)`.
    fn damped(&self, u: f64, extra_log: f64) -> Result<Complex64> {
        let arg = self.kappa * u;
        let spec = self.spec.with_argument(arg);
        let r = pfq::eval_scaled(&spec, u + extra_log, INNER_TOL, pfq::DEFAULT_MAX_TERMS)?;
        Ok(r.value)
    }

    fn at(&self, u: f64) -> Result<Complex64> {
        let ln_u = u.ln();
        let power = self.v - 1.0;
        let phase = Complex64::from_polar(1.0, power.im * ln_u);
        Ok(self.damped(u, -power.re * ln_u)? * phase)
    }

    /// Integrand on `[0, 1]` after `u = x^{1/r}`, `r = Re v`.
    fn substituted(&self, x: f64, r: f64) -> Result<Complex64> {
        let u = x.powf(1.0 / r);
        let phase = Complex64::from_polar(1.0, self.v.im / r * x.ln());
        Ok(self.damped(u, 0.0)? * phase / r)
    }
}

enum Decay {
    Exponential { rate: f64 },
    Algebraic { rho: Complex64 },
}

fn decay_class(spec: &HyperSeries, kappa: Complex64, v: Complex64) -> Result<Decay> {
    let (p, q) = (spec.p(), spec.q());
    if kappa == Complex64::new(0.0, 0.0) || p < q {
        return Ok(Decay::Exponential { rate: 1.0 });
    }
    if p > q {
        return Err(Error::Validity(format!("no Laplace transform for p={p} > q={q}")));
    }
    if (kappa - 1.0).norm() <= 1e-12 {
        if p == 0 {
            return Err(Error::Validity("Re(s)>Re(w) required".into()));
        }
        let rho = v - 1.0 - spec.excess();
        if rho.re >= SLOW_DECAY_LIMIT {
            return Err(Error::SlowDecay(rho.re));
        }
        return Ok(Decay::Algebraic { rho });
    }
    let rate = 1.0 - kappa.re.max(0.0);
    if rate <= 0.0 {
        return Err(Error::Validity("Re(s)>Re(w) required".into()));
    }
    Ok(Decay::Exponential { rate })
}

/// Cutoff for the algebraic tail: far enough out that the asymptotic
/// expansion in `1/u` converges quickly for the given parameter sizes.
fn power_law_cutoff(spec: &HyperSeries, v: Complex64) -> f64 {
    let size = spec
        .numerator()
        .iter()
        .chain(spec.denominator())
        .chain([&v])
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let u = 40.0 * (1.0 + size).powi(2);
    2f64.powi(u.max(400.0).log2().ceil() as i32)
}

/// Interpolates `g(x)` at `n` Chebyshev points of `[x0, 1]` and returns
/// `∫₀¹ x^μ P(x) dx` for the interpolating polynomial `P`, `Re μ > -1`.
fn extrapolated_moment(samples: &[(f64, Complex64)], x0: f64, mu: Complex64) -> Complex64 {
    let n = samples.len();
    // P in the variable y = (x - mid)/half on [-1, 1], where the monomial
    // system at Chebyshev points is well conditioned
    let mid = 0.5 * (1.0 + x0);
    let half = 0.5 * (1.0 - x0);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
    for (i, &(x, g)) in samples.iter().enumerate() {
        let y = (x - mid) / half;
        let mut pw = 1.0;
        for cell in &mut m[i][..n] {
            *cell = Complex64::new(pw, 0.0);
            pw *= y;
        }
        m[i][n] = g;
    }
    let coef = solve(m);
    // ∫₀¹ x^μ y^k dx with y = αx + β, expanded binomially
    let alpha = 1.0 / half;
    let beta = -mid / half;
    let mut total = Complex64::new(0.0, 0.0);
    for (k, ck) in coef.iter().enumerate() {
        let mut moment = Complex64::new(0.0, 0.0);
        let mut binom = 1.0;
        for i in 0..=k {
            let w = binom * alpha.powi(i as i32) * beta.powi((k - i) as i32);
            moment += w / (mu + (i as f64 + 1.0));
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        total += ck * moment;
    }
    total
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut m: Vec<Vec<Complex64>>) -> Vec<Complex64> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .expect("nonempty");
        m.swap(col, piv);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            let f = row[col] / pivot[col];
            for (x, &t) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * t;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

fn chebyshev_points(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let t = ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            0.5 * (lo + hi) + 0.5 * (hi - lo) * t
        })
        .collect()
}

/// `∫_U^∞ f(u) du` for `f(u) ~ u^ρ (c₀ + c₁/u + …)`, from interpolation of
/// `u^{-ρ} f(u)` in `x = U/u` on `[0.1, 1]`. Returns (tail, error estimate).
fn power_law_tail(f: &Integrand, big_u: f64, rho: Complex64, nodes: &mut u64) -> Result<(Complex64, f64)> {
    const X0: f64 = 0.1;
    let mu = -rho - 2.0;
    let scale = cpow(Complex64::new(big_u, 0.0), rho + 1.0);
    let mut fit = |n: usize| -> Result<Complex64> {
        let mut samples = Vec::with_capacity(n);
        for x in chebyshev_points(n, X0, 1.0) {
            let u = big_u / x;
            let g = f.at(u)? * cpow(Complex64::new(u, 0.0), -rho);
            samples.push((x, g));
        }
        *nodes += n as u64;
        Ok(scale * extrapolated_moment(&samples, X0, mu))
    };
    let fine = fit(9)?;
    let coarse = fit(7)?;
    Ok((fine, (fine - coarse).norm()))
}

fn check_inputs(v: Complex64, s: Complex64, w: Complex64) -> Result<()> {
    if v.re <= 0.0 || v.re.is_nan() {
        return Err(Error::Validity("Re(v)<=0".into()));
    }
    if s.re <= 0.0 || s.re.is_nan() {
        return Err(Error::Validity("Re(s)<=0".into()));
    }
    if !w.is_finite() {
        return Err(Error::Validity("non-finite w".into()));
    }
    Ok(())
}

/// `∫₀^∞ e^{-st} t^{v-1} pFq(a; b; wt) dt` for `p <= q`; the argument
/// stored in `spec` is ignored.
pub fn laplace_numeric(
    v: Complex64,
    s: Complex64,
    w: Complex64,
    spec: &HyperSeries,
    tol: f64,
) -> Result<IntegralResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    check_inputs(v, s, w)?;
    let kappa = w / s;
    let decay = decay_class(spec, kappa, v)?;
    let f = Integrand { spec, kappa, v };
    let mut nodes = 0;

    // [0, 1]
    let r = v.re;
    let head = if r < 1.0 {
        adaptive(|x| f.substituted(x, r), &[0.0, 1.0], tol / 4.0, 0.0)?
    } else {
        adaptive(|u| f.at(u), &[0.0, 1.0], tol / 4.0, 0.0)?
    };
    nodes += head.nodes;
    let mut value = head.value;
    let mut err = head.err;

    let (tail, tail_err, method) = match decay {
        Decay::Exponential { rate } => {
            let mut lo = 1.0;
            let mut k = 0;
            loop {
                let hi = 2.0 * lo;
                let panel = adaptive(|u| f.at(u), &[lo, hi], tol / 4.0, 0.1 * tol * value.norm())?;
                nodes += panel.nodes;
                value += panel.value;
                err += panel.err;
                k += 1;
                let edge = f.at(hi)?;
                nodes += 1;
                let tail = edge / rate;
                let small = tol / 10.0 * value.norm();
                if (panel.value.norm() <= small && tail.norm() <= small) || k >= MAX_PANEL_EXP {
                    if k >= MAX_PANEL_EXP && tail.norm() > small {
                        return Err(Error::Quadrature(format!("integrand not decayed by u={hi}")));
                    }
                    break (tail, tail.norm(), TailMethod::ExpDecay);
                }
                lo = hi;
            }
        }
        Decay::Algebraic { rho } => {
            let big_u = power_law_cutoff(spec, v);
            let mut breaks = vec![1.0];
            while *breaks.last().expect("nonempty") < big_u {
                let next = 2.0 * breaks.last().expect("nonempty");
                breaks.push(next);
            }
            let body = adaptive(|u| f.at(u), &breaks, tol / 4.0, 0.0)?;
            nodes += body.nodes;
            value += body.value;
            err += body.err;
            let (tail, tail_err) = power_law_tail(&f, big_u, rho, &mut nodes)?;
            (tail, tail_err, TailMethod::PowerLawExtrapolation)
        }
    };
    value += tail;
    err += tail_err;

    let factor = cpow(s, -v);
    Ok(IntegralResult {
        value: value * factor,
        abs_err_est: err * factor.norm(),
        nodes_used: nodes,
        tail_method: method,
        tail_contribution: tail * factor,
    })
}

/// `∫₀^∞ e^{-st} t^{α-1} dt`, for calibration against `Γ(α) s^{-α}`.
pub fn gamma_integral_check(alpha: Complex64, s: Complex64) -> Result<IntegralResult> {
    let trivial = HyperSeries::new(vec![], vec![], Complex64::new(0.0, 0.0))?;
    laplace_numeric(alpha, s, Complex64::new(0.0, 0.0), &trivial, DEFAULT_TOL)
}
