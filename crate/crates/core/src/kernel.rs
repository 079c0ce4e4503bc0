//! Bergman kernel of the rational Hartogs triangle `H_{m/n}`.
//!
//! With `s = z1·conj(w1)` and `t = z2·conj(w2)` the kernel is
//!
//! ```text
//! K(z, w) = P(s, t) / (m π² (1 - t)² (t^n - s^m)²)
//! ```
//!
//! The numerator `P` is built two ways: [`numerator_effective`] sums the five
//! closed-form pieces, [`numerator_oracle`] runs the full `D_m` double sum
//! over the `(2m-1) × (2n+1)` rectangle. Float evaluation is confined to the
//! `eval_*`, `series_*` and restriction functions.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{coeff_c, kappa, l_index, IndexPair, PairMN};
use crate::luqikeng::{in_domain, psi, DomainPoint, Gamma};
use crate::poly::BiPoly;

const PI2: f64 = PI * PI;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("point {0:?} lies outside the domain")]
    OutsideDomain(DomainPoint),
    #[error("kernel denominator vanishes to working precision")]
    DenominatorVanishes,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

/// Numerator as the sum of the five pieces `p0 + ... + p4`.
pub fn numerator_effective(pair: PairMN) -> BiPoly {
    let m = pair.m() as i64;
    let n = pair.n() as i64;
    let mut p = BiPoly::zero();
    let mut push = |i: i64, j: i64, c: i64| {
        debug_assert!(i >= 0 && j >= 0 && c >= 0);
        p.add_term((i as u32, j as u32), BigInt::from(c));
    };
    push(m - 1, n, m * m);
    for j in 0..=m - 2 {
        let l = l_index(pair, j);
        let k = kappa(pair, j);
        push(j, 2 * n - l, (j + 1) * (k + 1));
        push(j, 2 * n + 1 - l, (j + 1) * (m - k - 1));
        push(j + m, n - l, (m - j - 1) * (k + 1));
        push(j + m, n + 1 - l, (m - j - 1) * (m - k - 1));
    }
    p
}

/// Brute-force numerator `Σ C(β1, β2) s^β1 t^β2` over `0 <= β1 <= 2m-2`,
/// `0 <= β2 <= 2n`.
pub fn numerator_oracle(pair: PairMN) -> BiPoly {
    let m = pair.m() as i64;
    let n = pair.n() as i64;
    BiPoly::from_terms((0..=2 * m - 2).flat_map(|b1| {
        (0..=2 * n).map(move |b2| ((b1 as u32, b2 as u32), coeff_c(pair, IndexPair::new(b1, b2))))
    }))
}

/// `P / (m π² (1-t)² (t^n - s^m)²)` with the numerator held exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelRational {
    pub pair: PairMN,
    pub numerator: BiPoly,
}

#[derive(Serialize, Deserialize)]
struct KernelJson {
    m: u64,
    n: u64,
    numerator: BiPoly,
    denominator: String,
}

impl KernelRational {
    pub fn new(pair: PairMN) -> Self {
        KernelRational {
            pair,
            numerator: numerator_effective(pair),
        }
    }

    pub fn denominator_string(&self) -> String {
        format!(
            "{}*pi^2*(1-t)^2*(t^{}-s^{})^2",
            self.pair.m(),
            self.pair.n(),
            self.pair.m()
        )
    }

    pub fn denominator(&self, s: Complex64, t: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let d = t.powu(self.pair.n() as u32) - s.powu(self.pair.m() as u32);
        (self.pair.m() as f64) * PI2 * (one - t).powu(2) * d * d
    }

    /// Kernel as a function of `(s, t)`, no membership check.
    pub fn eval_st(&self, s: Complex64, t: Complex64) -> Result<Complex64, KernelError> {
        let den = self.denominator(s, t);
        if den.norm() < 1e-300 {
            return Err(KernelError::DenominatorVanishes);
        }
        Ok(self.numerator.eval_complex(s, t) / den)
    }

    pub fn eval(&self, z: &DomainPoint, w: &DomainPoint) -> Result<Complex64, KernelError> {
        check_interior(self.pair.into(), z, w)?;
        let (s, t) = psi(z, w);
        self.eval_st(s, t)
    }
}

impl Serialize for KernelRational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        KernelJson {
            m: self.pair.m(),
            n: self.pair.n(),
            numerator: self.numerator.clone(),
            denominator: self.denominator_string(),
        }
        .serialize(serializer)
    }
}

fn check_interior(gamma: Gamma, z: &DomainPoint, w: &DomainPoint) -> Result<(), KernelError> {
    for p in [z, w] {
        if !in_domain(gamma, p) {
            return Err(KernelError::OutsideDomain(*p));
        }
    }
    Ok(())
}

pub fn eval_kernel(pair: PairMN, z: &DomainPoint, w: &DomainPoint) -> Result<Complex64, KernelError> {
    KernelRational::new(pair).eval(z, w)
}

/// Exponents `(a, b)` of `z1^a z2^b` that are square integrable on `H_{m/n}`:
/// `a >= 0` and `m(b+1) + n(a+1) > 0`.
pub fn is_allowable(pair: PairMN, a: i64, b: i64) -> bool {
    let m = pair.m() as i64;
    let n = pair.n() as i64;
    a >= 0 && m * (b + 1) + n * (a + 1) > 0
}

/// `‖z1^a z2^b‖² = π² m / ((a+1)(m(b+1) + n(a+1)))`, `None` when not allowable.
pub fn monomial_norm_sq(pair: PairMN, a: i64, b: i64) -> Option<f64> {
    if !is_allowable(pair, a, b) {
        return None;
    }
    let m = pair.m() as f64;
    let n = pair.n() as f64;
    let (a, b) = (a as f64, b as f64);
    Some(PI2 * m / ((a + 1.0) * (m * (b + 1.0) + n * (a + 1.0))))
}

/// Truncated monomial expansion of the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Upper bound on the modulus of everything the truncation dropped.
    pub tail_bound: f64,
    pub terms: usize,
}

/// Sums `s^a t^b / ‖z1^a z2^b‖²` over allowable `(a, b)` with `a <= cutoff`
/// and `b <= cutoff`. Negative `b` down to the allowability limit are always
/// included.
///
/// The tail bound dominates the dropped terms by geometric series in
/// `ρ = |t|` and `σ = |s| / |t|^(n/m)`, both below one for interior points.
pub fn series_kernel(
    pair: PairMN,
    z: &DomainPoint,
    w: &DomainPoint,
    cutoff: u32,
) -> Result<SeriesSum, KernelError> {
    check_interior(pair.into(), z, w)?;
    let (s, t) = psi(z, w);
    Ok(series_st(pair, s, t, cutoff))
}

fn b_min(m: i64, n: i64, a: i64) -> i64 {
    // smallest b with m(b+1) + n(a+1) > 0
    (-(n * (a + 1))).div_euclid(m)
}

pub(crate) fn series_st(pair: PairMN, s: Complex64, t: Complex64, cutoff: u32) -> SeriesSum {
    let m = pair.m() as i64;
    let n = pair.n() as i64;
    let cut = i64::from(cutoff);
    let (mf, nf) = (m as f64, n as f64);

    let mut value = Complex64::new(0.0, 0.0);
    let mut terms = 0usize;
    let mut row_lb = b_min(m, n, 0);
    // s^a t^(b_min(a)), advanced row by row to keep magnitudes near σ^a
    let mut row_start = t.powi(row_lb as i32);
    for a in 0..=cut {
        if a > 0 {
            let lb = b_min(m, n, a);
            row_start *= s * t.powi((lb - row_lb) as i32);
            row_lb = lb;
        }
        let mut term = row_start;
        let af = a as f64;
        for b in row_lb..=cut {
            let weight = (af + 1.0) * (mf * (b as f64 + 1.0) + nf * (af + 1.0)) / (PI2 * mf);
            value += term * weight;
            terms += 1;
            term *= t;
        }
    }
    SeriesSum {
        value,
        tail_bound: series_tail_bound(pair, s.norm(), t.norm(), cutoff),
        terms,
    }
}

fn series_tail_bound(pair: PairMN, abs_s: f64, rho: f64, cutoff: u32) -> f64 {
    let m = pair.m() as f64;
    let n = pair.n() as f64;
    let big = f64::from(cutoff);
    if rho.is_nan() || rho >= 1.0 {
        return f64::INFINITY;
    }
    // rows a <= cutoff, columns b > cutoff
    let geo = rho.powf(big + 1.0) / (1.0 - rho);
    let geo_lin = rho.powf(big + 1.0) * ((big + 2.0) - (big + 1.0) * rho) / (1.0 - rho).powi(2);
    let mut cols = 0.0;
    let mut s_pow = 1.0;
    for a in 0..=cutoff {
        let af = f64::from(a);
        cols += (af + 1.0) * s_pow * (m * geo_lin + n * (af + 1.0) * geo) / (PI2 * m);
        s_pow *= abs_s;
    }
    // rows a > cutoff, all columns: row a is at most (a+1) σ^a ρ^(-1-n/m) / (π²(1-ρ)²)
    let sigma = abs_s / rho.powf(n / m);
    let rows = if abs_s == 0.0 {
        0.0
    } else if sigma < 1.0 {
        sigma.powf(big + 1.0) * ((big + 2.0) - (big + 1.0) * sigma) / (1.0 - sigma).powi(2)
            * rho.powf(-1.0 - n / m)
            / (PI2 * (1.0 - rho).powi(2))
    } else {
        f64::INFINITY
    };
    cols + rows
}

/// Kernel of `H_γ` on the slice `z1 = w1 = 0`, as a function of `t = z2·conj(w2)`:
/// `(1 + (γ-1)t) / (γ π² t (1-t)²)`.
pub fn restrict_s0(gamma: f64, t: Complex64) -> Result<Complex64, KernelError> {
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(KernelError::DegenerateInput(format!("gamma={gamma} must be positive")));
    }
    let r = t.norm();
    if r == 0.0 || r >= 1.0 {
        return Err(KernelError::DegenerateInput(format!("need 0 < |t| < 1, got |t|={r}")));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok((one + (gamma - 1.0) * t) / (gamma * PI2 * t * (one - t).powu(2)))
}

/// The zero `t = 1/(1-γ)` of the slice kernel, present in the unit disc
/// exactly when `γ > 2`.
pub fn restrict_s0_zero(gamma: f64) -> Option<f64> {
    (gamma > 2.0).then(|| 1.0 / (1.0 - gamma))
}

/// Kernel of `H_1 = {|z1| < |z2| < 1}`:
/// `t / (π² (1-t)² (t-s)²)`.
pub fn k1_kernel(z: &DomainPoint, w: &DomainPoint) -> Result<Complex64, KernelError> {
    check_interior(Gamma::one(), z, w)?;
    let (s, t) = psi(z, w);
    let one = Complex64::new(1.0, 0.0);
    let den = PI2 * (one - t).powu(2) * (t - s).powu(2);
    if den.norm() < 1e-300 {
        return Err(KernelError::DenominatorVanishes);
    }
    Ok(t / den)
}
