//! Sturm chains and Cauchy indices for rational polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::{sign_of, IntPoly, RatPoly};

/// Positive integer multiple of `p` with coprime coefficients.
fn integral(p: &RatPoly) -> IntPoly {
    p.primitive().map(|c| c.to_integer())
}

fn primitive_part(p: IntPoly) -> IntPoly {
    let g = p.content();
    if g.is_zero() || g == BigInt::from(1) {
        p
    } else {
        p.map(|c| c / &g)
    }
}

/// A positive multiple of `f mod g`: each elimination step scales by
/// `|lc(g)|` only, and the content is divided out at the end.
fn positive_prem(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let dg = g.degree().expect("nonzero divisor");
    let lg = g.leading().expect("nonzero divisor").clone();
    let scale = lg.abs();
    let sign_g = lg.signum();
    let mut r = f.clone();
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        let lr = r.leading().expect("nonzero").clone();
        let sub = g.shift_up(dr - dg).scale(&(&sign_g * &lr));
        r = &r.scale(&scale) - &sub;
    }
    primitive_part(r)
}

/// Generalized Sturm sequence `f0, f1, -rem(f0, f1), ...`.
///
/// Entries are kept as primitive integer polynomials. Every entry is a
/// positive multiple of the classical one, so sign evaluations agree.
pub fn sturm_chain(f0: &RatPoly, f1: &RatPoly) -> Vec<IntPoly> {
    let mut chain = vec![integral(f0), integral(f1)];
    if chain[1].is_zero() {
        chain.pop();
        return chain;
    }
    loop {
        let n = chain.len();
        let r = positive_prem(&chain[n - 2], &chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-r);
    }
}

/// Sign of `p(x)` for rational `x`, evaluated as the homogenized integer
/// sum `Σ c_i num^i den^(d-i)` with `den > 0`.
fn int_sign_at(p: &IntPoly, x: &BigRational) -> Ordering {
    if p.is_zero() {
        return Ordering::Equal;
    }
    let (num, den) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::from(1);
    for c in p.coeffs().iter().rev() {
        acc = acc * num + c * &den_pow;
        den_pow *= den;
    }
    sign_of(&acc)
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[IntPoly], x: &BigRational) -> usize {
    variations(chain.iter().map(|f| int_sign_at(f, x)))
}

fn variations_at_infinity(chain: &[IntPoly], positive: bool) -> usize {
    variations(chain.iter().map(|f| f.sign_at_infinity(positive)))
}

/// Distinct real roots in `[a, b]`, or `None` when `p` vanishes at an
/// endpoint. No square-free reduction is needed: a common factor of the
/// chain is nonzero at both endpoints and leaves the variations unchanged.
pub fn distinct_roots_between(p: &RatPoly, a: &BigRational, b: &BigRational) -> Option<usize> {
    assert!(a < b, "distinct_roots_between needs a < b");
    if p.degree().unwrap_or(0) == 0 {
        return Some(0);
    }
    let chain = sturm_chain(p, &p.derivative());
    if int_sign_at(&chain[0], a) == Ordering::Equal || int_sign_at(&chain[0], b) == Ordering::Equal {
        return None;
    }
    Some(variations_at(&chain, a) - variations_at(&chain, b))
}

/// Number of distinct real roots of `p` in `(a, b]`.
///
/// Repeated factors are divided out first, so `p` need not be square-free.
pub fn sturm_count(p: &RatPoly, a: &BigRational, b: &BigRational) -> usize {
    assert!(a < b, "sturm_count needs a < b");
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    if let Some(count) = distinct_roots_between(p, a, b) {
        return count;
    }
    let g = p.gcd(&p.derivative());
    let sf = p.exact_div(&g).expect("gcd divides p");
    let chain = sturm_chain(&sf, &sf.derivative());
    variations_at(&chain, a) - variations_at(&chain, b)
}

/// Number of distinct real roots of `p` on the whole real line.
pub fn real_root_count(p: &RatPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(p, &p.derivative());
    variations_at_infinity(&chain, false) - variations_at_infinity(&chain, true)
}

/// Number of distinct real roots of `p` in the closed interval `[a, b]`.
pub fn sturm_count_closed(p: &RatPoly, a: &BigRational, b: &BigRational) -> usize {
    let at_a = usize::from(!p.is_zero() && super::sign_at(p, a) == Ordering::Equal);
    sturm_count(p, a, b) + at_a
}

/// Cauchy index of `num/den` over the whole real line: the number of poles
/// where the quotient jumps from `-∞` to `+∞` minus those jumping the other way.
pub fn cauchy_index(num: &RatPoly, den: &RatPoly) -> i64 {
    if num.is_zero() || den.is_zero() {
        return 0;
    }
    let chain = sturm_chain(den, num);
    variations_at_infinity(&chain, false) as i64 - variations_at_infinity(&chain, true) as i64
}
