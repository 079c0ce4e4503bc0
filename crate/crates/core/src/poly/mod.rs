//! Exact polynomial containers.
//!
//! [`BiPoly`] is a sparse bivariate polynomial in `(s, t)` over `BigInt`.
//! [`UniPoly`] is a dense univariate polynomial, generic over the scalar
//! domain; [`IntPoly`] and [`RatPoly`] are the two instantiations used by the
//! rest of the crate.

mod bivariate;
mod univariate;

pub use bivariate::BiPoly;
pub use univariate::{IntPoly, RatPoly, Scalar, UniPoly};
pub(crate) use univariate::sign_of;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial has valuation {valuation}, cannot divide by s^{shift}")]
    NotDivisible { valuation: usize, shift: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("malformed polynomial JSON: {0}")]
    Malformed(String),
}
