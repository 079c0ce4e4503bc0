use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// Coefficient ring for [`UniPoly`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Signed
    + ToPrimitive
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Dense univariate polynomial, `coeffs[i]` multiplies `s^i`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and every other polynomial has a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = UniPoly<BigInt>;
pub type RatPoly = UniPoly<BigRational>;

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c · s^deg`
    pub fn monomial(c: T, deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact division by `s^shift`.
    pub fn shift_down(&self, shift: usize) -> Result<Self, PolyError> {
        match self.valuation() {
            None => Ok(Self::zero()),
            Some(v) if v < shift => Err(PolyError::NotDivisible {
                valuation: v,
                shift,
            }),
            Some(_) => Ok(UniPoly {
                coeffs: self.coeffs[shift..].to_vec(),
            }),
        }
    }

    /// Multiplication by `s^shift`.
    pub fn shift_up(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// `s^deg p(1/s)`.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// True for a nonzero polynomial of even degree equal to its own reversal.
    pub fn is_palindromic(&self) -> bool {
        match self.degree() {
            Some(d) if d % 2 == 0 => self
                .coeffs
                .iter()
                .zip(self.coeffs.iter().rev())
                .all(|(a, b)| a == b),
            _ => false,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &T::from_i64(i as i64))
                .collect(),
        )
    }

    /// Horner evaluation in the coefficient ring.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Sign of `p(x)` as `x -> +inf` (`positive = true`) or `-inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        match (self.degree(), self.leading()) {
            (Some(d), Some(lc)) => {
                let s = sign_of(lc);
                if !positive && d % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
            _ => Ordering::Equal,
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

pub(crate) fn sign_of<T: Signed>(v: &T) -> Ordering {
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> RatPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl RatPoly {
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / lc;
            if c.is_zero() {
                continue;
            }
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + k] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Positive rational multiple with coprime integer coefficients.
    ///
    /// The sign of every value is preserved, which is what remainder
    /// sequences for sign counting need.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        UniPoly::new(
            ints.into_iter()
                .map(|c| BigRational::from_integer(c / &g))
                .collect(),
        )
    }

    /// Yun's square-free factorization: `self = c · Π f_i^i`, returned as
    /// `(f_i, i)` pairs with each `f_i` monic, square-free and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides f");
        let c = df.exact_div(&a).expect("gcd divides f'");
        let mut d = c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let g = b.gcd(&d);
            b = b.exact_div(&g).expect("gcd divides b");
            d = d.exact_div(&g).expect("gcd divides d") - &b.derivative();
            if g.degree().unwrap_or(0) > 0 {
                out.push((g, i));
            }
            i += 1;
        }
        out
    }
}

impl<T: Scalar> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*s")?,
                _ => write!(f, "{c}*s^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a, T: Scalar> Add<&'a UniPoly<T>> for &'a UniPoly<T> {
    type Output = UniPoly<T>;

    fn add(self, rhs: &'a UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Add<&UniPoly<T>> for UniPoly<T> {
    type Output = UniPoly<T>;

    fn add(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        &self + rhs
    }
}

impl<'a, T: Scalar> Sub<&'a UniPoly<T>> for &'a UniPoly<T> {
    type Output = UniPoly<T>;

    fn sub(self, rhs: &'a UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub<&UniPoly<T>> for UniPoly<T> {
    type Output = UniPoly<T>;

    fn sub(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        &self - rhs
    }
}

impl<'a, T: Scalar> Mul<&'a UniPoly<T>> for &'a UniPoly<T> {
    type Output = UniPoly<T>;

    fn mul(self, rhs: &'a UniPoly<T>) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        UniPoly::new(out)
    }
}

impl<T: Scalar> Mul<&UniPoly<T>> for UniPoly<T> {
    type Output = UniPoly<T>;

    fn mul(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        &self * rhs
    }
}

impl<T: Scalar> Neg for UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}
