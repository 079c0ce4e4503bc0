//! Exact count of zeros inside the open unit disc.
//!
//! The main path is the Schur–Cohn reflected-coefficient recursion
//!
//! ```text
//! T p = a_0 p - a_d p*,   p*(s) = s^d p(1/s),
//! ```
//!
//! which on the unit circle compares `|a_0 p|` against `|a_d p*| = |a_d p|`.
//! By Rouché, `T p` has the zeros of `p` inside the disc when
//! `|a_0| > |a_d|` and those of `p*` when `|a_0| < |a_d|`.
//!
//! A step is singular when `|a_0| = |a_d|`; every palindromic input is
//! singular at the first step. Singular steps are resolved without
//! perturbation through the Cayley map `s = (1 + w)/(1 - w)`, which sends the
//! disc to the left half plane, followed by a Routh–Hurwitz count through the
//! Cauchy index of `Im q(iy) / Re q(iy)`. Common factors of the real and
//! imaginary parts (zeros placed symmetrically about the imaginary axis)
//! drop out of the index, so this route has no singular cases of its own as
//! long as there are no zeros on the circle.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sturm::{cauchy_index, real_root_count};
use super::RootError;
use crate::poly::RatPoly;

/// Zeros of `p` in `|s| < 1`, with multiplicity. `p` must not vanish on the
/// unit circle.
pub fn schur_cohn_inside(p: &RatPoly) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let at_origin = p.valuation().expect("nonzero");
    let p = p.shift_down(at_origin).expect("valuation divides").primitive();
    let d = p.degree().expect("nonzero");
    if d == 0 {
        return Ok(at_origin);
    }
    let a0 = p.coeff(0);
    let ad = p.coeff(d);
    let delta = &a0 * &a0 - &ad * &ad;
    let inner = match delta.cmp(&BigRational::zero()) {
        Ordering::Equal => cayley_inside(&p)?,
        Ordering::Greater => schur_cohn_inside(&reflect(&p, &a0, &ad))?,
        Ordering::Less => d - schur_cohn_inside(&reflect(&p, &a0, &ad))?,
    };
    Ok(at_origin + inner)
}

fn reflect(p: &RatPoly, a0: &BigRational, ad: &BigRational) -> RatPoly {
    p.scale(a0) - &p.reverse().scale(ad)
}

/// Disc count through the Cayley transform and the Routh–Hurwitz index.
pub fn cayley_inside(p: &RatPoly) -> Result<usize, RootError> {
    let d = p.degree().ok_or(RootError::ZeroPolynomial)?;
    let q = cayley_transform(p);
    if q.degree() != Some(d) {
        // p(-1) = 0
        return Err(RootError::RootOnCircle);
    }
    let (re, im) = split_on_imaginary_axis(&q);
    // a common real root of both parts is a zero of q on the imaginary axis
    if real_root_count(&re.gcd(&im)) > 0 {
        return Err(RootError::RootOnCircle);
    }
    // Δ arg q(iy) over the real line is π (n_left - n_right); it equals the
    // change of arctan(im/re) at ±∞ minus π times the Cauchy index.
    let ends = match (re.degree(), im.degree()) {
        (Some(dr), Some(di)) if di > dr => {
            let upper = re.leading().unwrap() * im.leading().unwrap() > BigRational::zero();
            let s_plus: i64 = if upper { 1 } else { -1 };
            let s_minus = if (di - dr) % 2 == 1 { -s_plus } else { s_plus };
            (s_plus - s_minus) / 2
        }
        _ => 0,
    };
    let diff = ends - cauchy_index(&im, &re);
    let left = (d as i64 + diff) / 2;
    if (d as i64 + diff) % 2 != 0 || !(0..=d as i64).contains(&left) {
        return Err(RootError::RootOnCircle);
    }
    Ok(left as usize)
}

/// `q(w) = (1 - w)^d p((1 + w)/(1 - w))`.
pub fn cayley_transform(p: &RatPoly) -> RatPoly {
    let Some(d) = p.degree() else {
        return RatPoly::zero();
    };
    let plus = RatPoly::from_i64s(&[1, 1]);
    let minus = RatPoly::from_i64s(&[1, -1]);
    let mut plus_pow = vec![RatPoly::constant(BigRational::one())];
    let mut minus_pow = vec![RatPoly::constant(BigRational::one())];
    for i in 1..=d {
        plus_pow.push(&plus_pow[i - 1] * &plus);
        minus_pow.push(&minus_pow[i - 1] * &minus);
    }
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(RatPoly::zero(), |acc, (i, c)| {
            acc + &(&plus_pow[i] * &minus_pow[d - i]).scale(c)
        })
}

/// Real and imaginary parts of `q(iy)` as polynomials in `y`.
fn split_on_imaginary_axis(q: &RatPoly) -> (RatPoly, RatPoly) {
    let n = q.coeffs().len();
    let mut re = vec![BigRational::zero(); n];
    let mut im = vec![BigRational::zero(); n];
    for (k, c) in q.coeffs().iter().enumerate() {
        // i^k
        match k % 4 {
            0 => re[k] = c.clone(),
            1 => im[k] = c.clone(),
            2 => re[k] = -c.clone(),
            _ => im[k] = -c.clone(),
        }
    }
    (RatPoly::new(re), RatPoly::new(im))
}
