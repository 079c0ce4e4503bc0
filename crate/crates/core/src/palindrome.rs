//! The diagonal restriction `Q_{m,n}(s) = s^(1-2n) P_{m,n}(s, s)`.
//!
//! `Q` is a palindromic polynomial of degree `2(m-n)` with positive
//! coefficients. It is assembled from five pieces `q0..q4` mirroring the
//! pieces of the numerator, and is cross-checked against the direct
//! restriction of the bivariate numerator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{kappa, l_index, PairMN};
use crate::kernel::numerator_effective;
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PalindromeError {
    #[error("piecewise Q{pair} disagrees with the diagonal restriction of P")]
    InternalMismatch { pair: PairMN },
    #[error("closed forms exist only for k = 1 or 2 (got k={0})")]
    UnsupportedFamily(u64),
    #[error("family index ell must be at least 1")]
    BadFamilyIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    pub pair: PairMN,
    pub poly: IntPoly,
    pub pieces: [IntPoly; 5],
}

/// The five pieces `q0..q4`, summed in order to give `Q`.
pub fn q_pieces(pair: PairMN) -> [IntPoly; 5] {
    let m = pair.m() as i64;
    let n = pair.n() as i64;
    let k = m - n;
    let mut q: [Vec<BigInt>; 5] = Default::default();
    for v in q.iter_mut() {
        *v = vec![BigInt::zero(); 2 * k as usize + 1];
    }
    q[0][k as usize] += BigInt::from(m * m);
    for j in 0..=m - 2 {
        let e = j - l_index(pair, j) + 1;
        let kj = kappa(pair, j);
        let terms = [
            (e, (j + 1) * (kj + 1)),
            (e + 1, (j + 1) * (m - kj - 1)),
            (e + k, (m - j - 1) * (kj + 1)),
            (e + k + 1, (m - j - 1) * (m - kj - 1)),
        ];
        for (piece, (exp, c)) in q[1..].iter_mut().zip(terms) {
            piece[exp as usize] += BigInt::from(c);
        }
    }
    q.map(IntPoly::new)
}

/// Builds `Q_{m,n}` from its pieces and checks it against
/// `shift_down(restrict_diagonal(P), 2n - 1)`.
pub fn q_poly(pair: PairMN) -> Result<QPoly, PalindromeError> {
    let pieces = q_pieces(pair);
    let poly = pieces.iter().fold(IntPoly::zero(), |acc, p| acc + p);
    let restricted = numerator_effective(pair)
        .restrict_diagonal()
        .shift_down(2 * pair.n() as usize - 1)
        .map_err(|_| PalindromeError::InternalMismatch { pair })?;
    if restricted != poly {
        return Err(PalindromeError::InternalMismatch { pair });
    }
    Ok(QPoly { pair, poly, pieces })
}

impl QPoly {
    pub fn k(&self) -> u64 {
        self.pair.k()
    }

    /// `s^(2k) q0(1/s) = q0`, `s^(2k) q1(1/s) = q4` and `s^(2k) q2(1/s) = q3`.
    pub fn verify_piece_identities(&self) -> bool {
        let deg = 2 * self.k() as usize;
        let reflect = |p: &IntPoly| -> IntPoly {
            let mut c: Vec<BigInt> = (0..=deg).map(|i| p.coeff(i)).collect();
            c.reverse();
            IntPoly::new(c)
        };
        let fits = self.pieces.iter().all(|p| p.degree().is_none_or(|d| d <= deg));
        let [q0, q1, q2, q3, q4] = &self.pieces;
        fits && reflect(q0) == *q0 && reflect(q1) == *q4 && reflect(q2) == *q3
    }

    pub fn to_json(&self) -> QPolyJson {
        QPolyJson {
            m: self.pair.m(),
            n: self.pair.n(),
            k: self.k(),
            coeffs: self.poly.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

/// `{"m":…, "n":…, "k":…, "coeffs":["1","6","1"]}`, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QPolyJson {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub coeffs: Vec<String>,
}

pub fn verify_piece_identities(q: &QPoly) -> bool {
    q.verify_piece_identities()
}

/// The pair whose `Q` the closed form describes: `(ℓ+1, ℓ)` for `k = 1`,
/// `(2ℓ+1, 2ℓ-1)` for `k = 2`.
pub fn family_pair(k: u64, ell: u64) -> Result<PairMN, PalindromeError> {
    if ell == 0 {
        return Err(PalindromeError::BadFamilyIndex);
    }
    let pair = match k {
        1 => PairMN::new(ell + 1, ell),
        2 => PairMN::new(2 * ell + 1, 2 * ell - 1),
        _ => return Err(PalindromeError::UnsupportedFamily(k)),
    };
    Ok(pair.expect("family pairs are coprime"))
}

fn exact_div(num: BigInt, den: u32) -> BigInt {
    let (q, r) = num.div_rem(&BigInt::from(den));
    assert!(r.is_zero(), "closed-form coefficient not divisible by {den}");
    q
}

/// Closed forms of `Q` along the families `m - n = 1` and `m - n = 2`.
///
/// * `k = 1`: `α0 (1 + s²) + α1 s` with `α0 = ℓ(ℓ+1)(ℓ+2)/6`,
///   `α1 = (ℓ+1)(2ℓ² + 4ℓ + 3)/3`.
/// * `k = 2`: `α0 (1 + s⁴) + α1 (s + s³) + α2 s²` with
///   `α0 = ℓ(ℓ+1)(2ℓ+1)/6`, `α1 = ℓ(ℓ+1)(2ℓ+1)`,
///   `α2 = (2ℓ+1)(5ℓ² + 5ℓ + 3)/3`.
pub fn family_closed_form(k: u64, ell: u64) -> Result<IntPoly, PalindromeError> {
    if !(k == 1 || k == 2) {
        return Err(PalindromeError::UnsupportedFamily(k));
    }
    if ell == 0 {
        return Err(PalindromeError::BadFamilyIndex);
    }
    let l = BigInt::from(ell);
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let lp1 = &l + &one;
    Ok(if k == 1 {
        let a0 = exact_div(&l * &lp1 * (&l + &two), 6);
        let a1 = exact_div(&lp1 * (&two * &l * &l + BigInt::from(4) * &l + &three), 3);
        IntPoly::new(vec![a0.clone(), a1, a0])
    } else {
        let tl1 = &two * &l + &one;
        let a0 = exact_div(&l * &lp1 * &tl1, 6);
        let a1 = &l * &lp1 * &tl1;
        let a2 = exact_div(&tl1 * (BigInt::from(5) * &l * &l + BigInt::from(5) * &l + &three), 3);
        IntPoly::new(vec![a0.clone(), a1.clone(), a2, a1, a0])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn pair(m: u64, n: u64) -> PairMN {
        PairMN::new(m, n).unwrap()
    }

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn spot_values() {
        assert_eq!(q_poly(pair(2, 1)).unwrap().poly, ip(&[1, 6, 1]));
        assert_eq!(q_poly(pair(3, 1)).unwrap().poly, ip(&[1, 6, 13, 6, 1]));
        assert_eq!(q_poly(pair(3, 2)).unwrap().poly, ip(&[4, 19, 4]));
    }

    #[test]
    fn piece_identities() {
        assert!(q_poly(pair(2, 1)).unwrap().verify_piece_identities());
        assert!(q_poly(pair(5, 3)).unwrap().verify_piece_identities());
        let mut broken = q_poly(pair(5, 3)).unwrap();
        broken.pieces[4] = &broken.pieces[4] + &ip(&[0, 1]);
        assert!(!broken.verify_piece_identities());
    }

    #[test]
    fn q_structure_small_sweep() {
        for p in PairMN::all_up_to(25) {
            let q = q_poly(p).unwrap();
            let k = p.k() as usize;
            assert_eq!(q.poly.degree(), Some(2 * k));
            assert!(q.poly.is_palindromic());
            assert!(q.poly.coeffs().iter().all(|c| c.is_positive()));
            assert!(!q.pieces[1].coeff(0).is_zero(), "q1(0) = 0 for {p}");
            assert_eq!(q.poly.eval(&BigInt::from(1)), BigInt::from(p.m().pow(3)));
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(family_closed_form(1, 1).unwrap(), ip(&[1, 6, 1]));
        assert_eq!(family_closed_form(2, 1).unwrap(), ip(&[1, 6, 13, 6, 1]));
        assert_eq!(family_closed_form(3, 1), Err(PalindromeError::UnsupportedFamily(3)));
        assert_eq!(family_closed_form(1, 0), Err(PalindromeError::BadFamilyIndex));
        for ell in 1..=30 {
            for k in [1, 2] {
                let q = q_poly(family_pair(k, ell).unwrap()).unwrap();
                assert_eq!(family_closed_form(k, ell).unwrap(), q.poly, "k={k} ell={ell}");
            }
        }
    }

    #[test]
    fn json_emission() {
        let js = serde_json::to_string(&q_poly(pair(2, 1)).unwrap().to_json()).unwrap();
        assert_eq!(js, r#"{"m":2,"n":1,"k":1,"coeffs":["1","6","1"]}"#);
    }
}
