//! Where the roots of a univariate polynomial sit relative to the unit circle.
//!
//! Counts are exact and multiplicity-weighted. A palindromic polynomial
//! with no roots on the circle has its roots paired as `r, 1/r`, so exactly
//! half lie inside. Everything else goes through the exact Schur–Cohn path
//! in [`schur_cohn`], after the circle roots have been split off:
//!
//! 1. `D = gcd(p, p*)` collects every circle root with full multiplicity
//!    (plus reciprocal pairs off the circle). `D` is self-inversive.
//! 2. Peeling `(s - 1)` and `(s + 1)` factors from `D` leaves an even-degree
//!    palindromic `E`, whose circle roots are counted through the Chebyshev
//!    reduction and Sturm sequences.
//! 3. The off-circle roots of `D` pair up as `r, 1/r`; the cofactor `p / D`
//!    has no circle roots and goes to Schur–Cohn.

pub mod aberth;
pub mod chebyshev;
pub mod schur_cohn;
pub mod sturm;

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use aberth::{numeric_roots, FloatRoot};
pub use chebyshev::{chebyshev_reduce, CirclePolynomial};
pub use schur_cohn::schur_cohn_inside;
pub use sturm::sturm_count;

use crate::poly::{sign_of, RatPoly, Scalar, UniPoly};

/// Float roots closer than this to the unit circle are classified "on".
pub const GUARD_BAND: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial is not palindromic of even degree")]
    NotPalindromic,
    #[error("polynomial has a zero constant term")]
    ZeroConstantTerm,
    #[error("zero polynomial has no root census")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots to approximate")]
    ConstantPolynomial,
    #[error("polynomial has a root on the unit circle where none was expected")]
    RootOnCircle,
    #[error("root iteration did not converge within {0} iterations")]
    ConvergenceFailure(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMethod {
    PalindromicPairing,
    SchurCohn,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootCensus {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    pub method: CensusMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub float_roots: Option<Vec<FloatRoot>>,
    /// Disagreements between the float roots and the exact counts.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl RootCensus {
    pub fn degree(&self) -> usize {
        self.inside + self.on_circle + self.outside
    }

    /// Attaches float roots and records any disagreement with the exact
    /// counts; disagreements are never resolved in favour of the floats.
    pub fn with_float_roots(mut self, roots: Vec<FloatRoot>) -> Self {
        let (mut inside, mut on, mut outside) = (0, 0, 0);
        for r in &roots {
            let modulus = r.value.norm();
            if modulus < 1.0 - GUARD_BAND {
                inside += 1;
            } else if modulus > 1.0 + GUARD_BAND {
                outside += 1;
            } else {
                on += 1;
            }
        }
        if (inside, on, outside) != (self.inside, self.on_circle, self.outside) {
            self.warnings.push(format!(
                "float roots classify as inside={inside} on={on} outside={outside}, exact census is inside={} on={} outside={}",
                self.inside, self.on_circle, self.outside
            ));
        }
        self.float_roots = Some(roots);
        self
    }
}

pub(crate) fn sign_at(p: &RatPoly, x: &BigRational) -> Ordering {
    sign_of(&p.eval(x))
}

fn to_rational<T: Scalar>(p: &UniPoly<T>) -> RatPoly
where
    BigRational: From<T>,
{
    p.map(|c| BigRational::from(c.clone()))
}

/// Roots of a palindromic polynomial on `|s| = 1`, with multiplicity.
pub fn circle_root_count<T: Scalar>(p: &UniPoly<T>) -> Result<usize, RootError>
where
    BigRational: From<T>,
{
    let cheb = chebyshev_reduce(p)?.cheb;
    let (lo, hi) = (-BigRational::one(), BigRational::one());
    if sturm::distinct_roots_between(&cheb, &lo, &hi) == Some(0) {
        return Ok(0);
    }
    Ok(cheb
        .squarefree_decomposition()
        .iter()
        .map(|(f, mult)| 2 * mult * sturm::sturm_count_closed(f, &lo, &hi))
        .sum())
}

/// Exact census of roots inside, on and outside the unit circle.
pub fn interior_root_count<T: Scalar>(p: &UniPoly<T>) -> Result<RootCensus, RootError>
where
    BigRational: From<T>,
{
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.coeff(0).is_zero() {
        return Err(RootError::ZeroConstantTerm);
    }
    let d = p.degree().expect("nonzero");
    if p.is_palindromic() && circle_root_count(p)? == 0 {
        return Ok(RootCensus {
            inside: d / 2,
            on_circle: 0,
            outside: d / 2,
            method: CensusMethod::PalindromicPairing,
            float_roots: None,
            warnings: Vec::new(),
        });
    }
    let p = to_rational(p);
    let self_inversive = p.gcd(&p.reverse());
    let cofactor = p.exact_div(&self_inversive).expect("gcd divides p");
    let on_circle = self_inversive_circle_count(&self_inversive)?;
    let sid = self_inversive.degree().expect("gcd of nonzero polynomials");
    let inside = (sid - on_circle) / 2 + schur_cohn_inside(&cofactor)?;
    Ok(RootCensus {
        inside,
        on_circle,
        outside: d - inside - on_circle,
        method: CensusMethod::SchurCohn,
        float_roots: None,
        warnings: Vec::new(),
    })
}

/// Circle roots of a self-inversive polynomial: the multiplicities of
/// `s = 1` and `s = -1` plus the circle roots of the palindromic remainder.
fn self_inversive_circle_count(d: &RatPoly) -> Result<usize, RootError> {
    let mut rest = d.clone();
    let mut count = 0;
    for root in [1, -1] {
        let factor = RatPoly::from_i64s(&[-root, 1]);
        while let Some(q) = rest.exact_div(&factor) {
            rest = q;
            count += 1;
        }
    }
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(count);
    }
    // monic and self-inversive with s = ±1 removed, hence palindromic
    Ok(count + circle_root_count(&rest)?)
}

/// Roots that float iteration places strictly inside `|s| < 1 - GUARD_BAND`.
pub fn interior_float_roots(roots: &[FloatRoot]) -> Vec<FloatRoot> {
    roots
        .iter()
        .copied()
        .filter(|r| r.value.norm() < 1.0 - GUARD_BAND && !r.value.norm().is_zero())
        .collect()
}
