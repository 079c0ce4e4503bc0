//! Explicit zeros of the Bergman kernel on the diagonal slice.
//!
//! An interior root `s0` of `Q_{m,n}` is split as `z = (√|s0| e^{iθ}, √|s0| e^{iθ})`,
//! `w = (√|s0|, √|s0|)` with `θ = arg s0`, so `ψ(z, w) = (s0, s0)`. Both points
//! have `|z1| = |z2| = r < 1`, and `r^γ < r` for `γ > 1`, so they are interior.
//! Any other split with the same products would do as well.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use super::{in_domain, interior_margin, psi, DomainPoint, Gamma};
use crate::arith::PairMN;
use crate::kernel::{KernelError, KernelRational};
use crate::palindrome::{q_poly, PalindromeError};
use crate::poly::IntPoly;
use crate::rootloc::{interior_float_roots, interior_root_count, numeric_roots, RootError};

/// Relative residual accepted from the float root finder before polishing.
const ROOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("Q for {0} has no root inside the unit disc")]
    NoInteriorRoot(PairMN),
    #[error("float roots disagree with the exact census for {pair}: expected {expected} inside, found {found}")]
    CensusMismatch {
        pair: PairMN,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Palindrome(#[from] PalindromeError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroWitness {
    pub pair: PairMN,
    pub s0: Complex64,
    pub z: DomainPoint,
    pub w: DomainPoint,
    pub kernel_value: Complex64,
    /// `|K(z, w)|`.
    pub residual: f64,
    /// Smaller of the two interior margins.
    pub margin: f64,
}

impl ZeroWitness {
    /// Largest deviation of `ψ(z, w)` from `(s0, s0)`.
    pub fn psi_error(&self) -> f64 {
        let (s, t) = psi(&self.z, &self.w);
        (s - self.s0).norm().max((t - self.s0).norm())
    }
}

fn eval_f64(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

/// Bisection on a sign change around a real root; falls back to `x` when no
/// bracket is found.
fn polish_real(c: &[f64], x: f64) -> f64 {
    let mut width = 1e-8 * x.abs().max(1e-3);
    let (mut lo, mut hi) = (x - width, x + width);
    let mut found = false;
    for _ in 0..20 {
        if eval_f64(c, lo).signum() != eval_f64(c, hi).signum() {
            found = true;
            break;
        }
        width *= 4.0;
        lo = x - width;
        hi = x + width;
    }
    if !found {
        return x;
    }
    let f_lo = eval_f64(c, lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = eval_f64(c, mid);
        if f == 0.0 {
            return mid;
        }
        if f.signum() == f_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A few Newton steps in complex arithmetic.
fn polish_complex(q: &IntPoly, mut z: Complex64) -> Complex64 {
    let dq = q.derivative();
    for _ in 0..8 {
        let step = q.eval_complex(z) / dq.eval_complex(z);
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() < 1e-17 * z.norm() {
            break;
        }
    }
    z
}

fn interior_roots(pair: PairMN, q: &IntPoly) -> Result<Vec<Complex64>, WitnessError> {
    let census = interior_root_count(q)?;
    if census.inside == 0 {
        return Err(WitnessError::NoInteriorRoot(pair));
    }
    let roots = interior_float_roots(&numeric_roots(q, ROOT_TOL)?);
    if roots.len() != census.inside {
        return Err(WitnessError::CensusMismatch {
            pair,
            expected: census.inside,
            found: roots.len(),
        });
    }
    let c = q.to_f64_coeffs();
    Ok(roots
        .iter()
        .map(|r| {
            let v = r.value;
            if v.im.abs() <= 1e-8 * v.norm() {
                Complex64::new(polish_real(&c, v.re), 0.0)
            } else {
                polish_complex(q, v)
            }
        })
        .collect())
}

fn witness_at(kernel: &KernelRational, s0: Complex64) -> Result<ZeroWitness, WitnessError> {
    let r = s0.norm().sqrt();
    let z = DomainPoint::new(Complex64::from_polar(r, s0.arg()), Complex64::from_polar(r, s0.arg()));
    let w = DomainPoint::real(r, r);
    let gamma = Gamma::from(kernel.pair);
    debug_assert!(in_domain(gamma, &z) && in_domain(gamma, &w));
    let kernel_value = kernel.eval(&z, &w)?;
    Ok(ZeroWitness {
        pair: kernel.pair,
        s0,
        z,
        w,
        kernel_value,
        residual: kernel_value.norm(),
        margin: interior_margin(gamma, &z).min(interior_margin(gamma, &w)),
    })
}

/// One witness per interior root of `Q_{m,n}`.
pub fn zero_witnesses(pair: PairMN) -> Result<Vec<ZeroWitness>, WitnessError> {
    let q = q_poly(pair)?;
    let kernel = KernelRational::new(pair);
    interior_roots(pair, &q.poly)?
        .into_iter()
        .map(|s0| witness_at(&kernel, s0))
        .collect()
}

/// The witness with the smallest kernel residual.
pub fn zero_witness(pair: PairMN) -> Result<ZeroWitness, WitnessError> {
    zero_witnesses(pair)?
        .into_iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .ok_or(WitnessError::NoInteriorRoot(pair))
}
