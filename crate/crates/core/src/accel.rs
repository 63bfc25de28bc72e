//! Series acceleration.
//!
//! Two tools, for the two slow regimes of a `p = q + 1` series on the unit
//! circle:
//!
//! * [`Richardson`] removes an error expansion `Σ c_k N^{-(δ+k)}` with known
//!   exponents from partial sums taken at geometrically spaced `N`. At
//!   `z = 1` the partial sums of a hypergeometric series have exactly this
//!   form with `δ` the parametric excess, and the elimination stays well
//!   conditioned because the spacing is geometric.
//! * [`levin_u`] handles the alternating case `z = -1` (and other unit-circle
//!   points), where the tail oscillates and Richardson does not apply.

use num_complex::Complex64;

/// Richardson extrapolation with exponents `delta, delta + 1, delta + 2, …`
/// on partial sums `s(N0), s(N0·r), s(N0·r²), …`.
#[derive(Debug, Clone)]
pub struct Richardson {
    delta: Complex64,
    ratio: f64,
    row: Vec<Complex64>,
    prev_diag: Option<Complex64>,
}

impl Richardson {
    pub fn new(delta: Complex64, ratio: f64) -> Self {
        Self {
            delta,
            ratio,
            row: Vec::new(),
            prev_diag: None,
        }
    }

    /// Number of partial sums consumed so far.
    pub fn len(&self) -> usize {
        self.row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row.is_empty()
    }

    /// Adds the next partial sum and returns `(estimate, |estimate - previous estimate|)`.
    pub fn push(&mut self, partial_sum: Complex64) -> (Complex64, f64) {
        let mut next = Vec::with_capacity(self.row.len() + 1);
        next.push(partial_sum);
        for (k, prev) in self.row.iter().enumerate() {
            let f = Complex64::new(self.ratio, 0.0).powc(self.delta + k as f64);
            let cur = next[k];
            next.push((f * cur - prev) / (f - 1.0));
        }
        self.row = next;
        let diag = *self.row.last().expect("row is non-empty");
        let change = match self.prev_diag {
            Some(p) => (diag - p).norm(),
            None => f64::INFINITY,
        };
        self.prev_diag = Some(diag);
        (diag, change)
    }
}

/// Levin u-transform `L_k^{(n)}` from terms `a_j` and partial sums
/// `s_j = a_0 + … + a_j`, using remainder estimates `ω_j = (β + j) a_j`.
///
/// Returns `None` when a remainder estimate vanishes.
pub fn levin_u(terms: &[Complex64], partial: &[Complex64], n: usize, k: usize, beta: f64) -> Option<Complex64> {
    assert!(n + k < terms.len() && n + k < partial.len());
    let mut numer = Complex64::new(0.0, 0.0);
    let mut denom = Complex64::new(0.0, 0.0);
    let last = beta + (n + k) as f64;
    let mut binom = 1.0;
    for j in 0..=k {
        let bj = beta + (n + j) as f64;
        let omega = terms[n + j] * bj;
        if omega.norm() == 0.0 {
            return None;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * binom * (bj / last).powi(k as i32 - 1);
        numer += partial[n + j] * w / omega;
        denom += w / omega;
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    let v = numer / denom;
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::re;

    #[test]
    fn richardson_zeta_two() {
        // Σ 1/n² = π²/6, partial sums s(N) = ζ(2) - 1/N + 1/(2N²) - …
        // so the tail exponents are 1, 2, 3, … (δ = 1).
        let mut r = Richardson::new(re(1.0), 2.0);
        let mut n0 = 8;
        let mut best = (re(0.0), f64::INFINITY);
        for _ in 0..8 {
            let s: f64 = (1..=n0).map(|n| 1.0 / (n as f64 * n as f64)).sum();
            best = r.push(re(s));
            n0 *= 2;
        }
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!((best.0.re - exact).abs() < 1e-13, "{}", best.0.re - exact);
        assert!(best.1 < 1e-11);
    }

    #[test]
    fn levin_alternating_log2() {
        // ln 2 = 1 - 1/2 + 1/3 - …
        let terms: Vec<Complex64> = (0..30)
            .map(|n| re(if n % 2 == 0 { 1.0 } else { -1.0 } / (n + 1) as f64))
            .collect();
        let mut partial = Vec::new();
        let mut s = re(0.0);
        for t in &terms {
            s += t;
            partial.push(s);
        }
        let v = levin_u(&terms, &partial, 2, 14, 1.0).unwrap();
        assert!((v.re - std::f64::consts::LN_2).abs() < 1e-13);
    }
}
