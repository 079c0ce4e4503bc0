use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{IntPoly, PolyError};

/// Sparse polynomial in `(s, t)` over the integers.
///
/// Terms are keyed by `(deg_s, deg_t)`; the `BTreeMap` keeps them in the
/// canonical lexicographic order used for serialization. Zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigInt)>,
    {
        let mut p = Self::zero();
        for (exp, c) in terms {
            p.add_term(exp, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, deg_s: u32, deg_t: u32) -> BigInt {
        self.terms
            .get(&(deg_s, deg_t))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms in canonical `(deg_s, deg_t)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_s(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, a)| (e, a * c)))
    }

    /// Substitutes `t := s`.
    pub fn restrict_diagonal(&self) -> IntPoly {
        let Some(deg) = self.total_degree() else {
            return IntPoly::zero();
        };
        let mut coeffs = vec![BigInt::zero(); deg as usize + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[(i + j) as usize] += c;
        }
        IntPoly::new(coeffs)
    }

    pub fn eval_exact(&self, s: &BigRational, t: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (&(i, j), c)| {
            acc + BigRational::from_integer(c.clone()) * pow_rat(s, i) * pow_rat(t, j)
        })
    }

    pub fn eval_complex(&self, s: Complex64, t: Complex64) -> Complex64 {
        self.terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, (&(i, j), c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                acc + c * s.powu(i) * t.powu(j)
            })
    }
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            match i {
                0 => {}
                1 => write!(f, "*s")?,
                _ => write!(f, "*s^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*t")?,
                _ => write!(f, "*t^{j}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BiPolyJson {
    var: String,
    terms: Vec<(u32, u32, String)>,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BiPolyJson {
            var: "s,t".into(),
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| (i, j, c.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BiPolyJson::deserialize(deserializer)?;
        if raw.var != "s,t" {
            return Err(D::Error::custom(PolyError::Malformed(format!(
                "unexpected variables {:?}",
                raw.var
            ))));
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (i, j, c) in raw.terms {
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(PolyError::Malformed(format!("bad coefficient {c:?}"))))?;
            terms.push(((i, j), c));
        }
        Ok(BiPoly::from_terms(terms))
    }
}
