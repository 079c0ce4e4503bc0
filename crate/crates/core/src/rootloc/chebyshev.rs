//! Reduction of a palindromic polynomial to a real polynomial in `x = cos θ`.
//!
//! For `p` palindromic of degree `2k`,
//!
//! ```text
//! p(e^{iθ}) e^{-ikθ} = c_k + Σ_{j=1..k} 2 c_{k+j} cos(jθ) = C(cos θ),
//! ```
//!
//! and more generally `p(s) = s^k C((s + 1/s)/2)`. A root `x0` of `C` yields
//! the two roots of `s² - 2 x0 s + 1`, which lie on the unit circle exactly
//! when `x0 ∈ [-1, 1]`. For `x0 ∈ (-1, 1)` these are a conjugate pair
//! `e^{±iθ}`; at `x0 = ±1` they merge into the double root `s = ±1`. Either
//! way a root of multiplicity `μ` of `C` in `[-1, 1]` accounts for `2μ` roots
//! of `p` on the circle, counted with multiplicity.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RootError;
use crate::poly::{RatPoly, Scalar, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirclePolynomial {
    pub cheb: RatPoly,
}

/// Chebyshev polynomials of the first kind `T_0..=T_k`.
pub fn chebyshev_t(k: usize) -> Vec<RatPoly> {
    let two_x = RatPoly::from_i64s(&[0, 2]);
    let mut ts = vec![RatPoly::from_i64s(&[1]), RatPoly::from_i64s(&[0, 1])];
    while ts.len() <= k {
        let n = ts.len();
        let next = &(&two_x * &ts[n - 1]) - &ts[n - 2];
        ts.push(next);
    }
    ts.truncate(k + 1);
    ts
}

pub fn chebyshev_reduce<T: Scalar>(p: &UniPoly<T>) -> Result<CirclePolynomial, RootError>
where
    BigRational: From<T>,
{
    if !p.is_palindromic() {
        return Err(RootError::NotPalindromic);
    }
    let k = p.degree().expect("palindromic polynomials are nonzero") / 2;
    let c = |i: usize| BigRational::from(p.coeff(i));
    let ts = chebyshev_t(k);
    let two = BigRational::from_integer(2.into());
    let mut cheb = RatPoly::constant(c(k));
    for (j, t) in ts.iter().enumerate().skip(1) {
        let w = &two * c(k + j);
        if !w.is_zero() {
            cheb = cheb + &t.scale(&w);
        }
    }
    Ok(CirclePolynomial { cheb })
}

impl CirclePolynomial {
    /// Rebuilds `s^k C((s + 1/s)/2)` from the reduction.
    pub fn lift(&self, k: usize) -> RatPoly {
        let half = BigRational::new(1.into(), 2.into());
        // (s² + 1)/2 stands for s·x
        let sx = RatPoly::new(vec![half.clone(), BigRational::zero(), half]);
        let mut out = RatPoly::zero();
        let mut power = RatPoly::constant(BigRational::one());
        for (j, cj) in self.cheb.coeffs().iter().enumerate() {
            if j > k {
                break;
            }
            out = out + &power.scale(cj).shift_up(k - j);
            power = &power * &sx;
        }
        out
    }
}
