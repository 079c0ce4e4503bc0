//! Exact index arithmetic for the numerator coefficients.
//!
//! Everything here works on integers only. `L(j)` and `κ(j)` select which
//! monomials survive in the numerator, `d_m` is the tent function whose
//! values are the coefficients of `((1 - x^m) / (1 - x))^2`, and
//! [`coeff_c`] is the rectangle coefficient of the brute-force double sum.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("m,n must be coprime (got m={m}, n={n})")]
    NotCoprime { m: u64, n: u64 },
    #[error("require m > n >= 1 (got m={m}, n={n})")]
    NotOrdered { m: u64, n: u64 },
    #[error("m={0} exceeds the supported maximum {max}", max = PairMN::MAX_M)]
    TooLarge(u64),
}

/// A coprime pair `m > n >= 1`, indexing the domain `{|z1|^(m/n) < |z2| < 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct PairMN {
    m: u32,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    m: u64,
    n: u64,
}

impl TryFrom<RawPair> for PairMN {
    type Error = PairError;

    fn try_from(raw: RawPair) -> Result<Self, PairError> {
        PairMN::new(raw.m, raw.n)
    }
}

impl From<PairMN> for RawPair {
    fn from(p: PairMN) -> Self {
        RawPair { m: p.m(), n: p.n() }
    }
}

impl PairMN {
    pub const MAX_M: u64 = 1 << 30;

    /// Rejects non-coprime pairs and `m <= n`; nothing is silently reduced.
    pub fn new(m: u64, n: u64) -> Result<Self, PairError> {
        if n == 0 || m <= n {
            return Err(PairError::NotOrdered { m, n });
        }
        if m > Self::MAX_M {
            return Err(PairError::TooLarge(m));
        }
        if m.gcd(&n) != 1 {
            return Err(PairError::NotCoprime { m, n });
        }
        Ok(PairMN {
            m: m as u32,
            n: n as u32,
        })
    }

    pub fn m(&self) -> u64 {
        u64::from(self.m)
    }

    pub fn n(&self) -> u64 {
        u64::from(self.n)
    }

    /// `k = m - n`, half the degree of the diagonal restriction.
    pub fn k(&self) -> u64 {
        self.m() - self.n()
    }

    pub fn gamma(&self) -> f64 {
        f64::from(self.m) / f64::from(self.n)
    }

    /// All coprime pairs `n < m <= m_max`, ordered by `(m, n)`.
    pub fn all_up_to(m_max: u64) -> impl Iterator<Item = PairMN> {
        (2..=m_max).flat_map(|m| (1..m).filter_map(move |n| PairMN::new(m, n).ok()))
    }

    fn mi(&self) -> i128 {
        i128::from(self.m)
    }

    fn ni(&self) -> i128 {
        i128::from(self.n)
    }
}

impl fmt::Display for PairMN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// Exponent pair `(β1, β2)` of a monomial `s^β1 t^β2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexPair {
    pub beta1: i64,
    pub beta2: i64,
}

impl IndexPair {
    pub fn new(beta1: i64, beta2: i64) -> Self {
        IndexPair { beta1, beta2 }
    }
}

/// `⌈a / b⌉` for `b > 0`, as `floor((a + b - 1) / b)` with floor division.
pub fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    Integer::div_floor(&(a + b - 1), &b)
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("index arithmetic left the i64 range")
}

/// `L(j) = ⌈(1 + n(j+1)) / m⌉`.
pub fn l_index(pair: PairMN, j: i64) -> i64 {
    let j = i128::from(j);
    narrow(ceil_div(1 + pair.ni() * (j + 1), pair.mi()))
}

/// `κ(j) = m + n - 1 + nj - m L(j)`.
pub fn kappa(pair: PairMN, j: i64) -> i64 {
    let (m, n) = (pair.mi(), pair.ni());
    let l = i128::from(l_index(pair, j));
    narrow(m + n - 1 + n * i128::from(j) - m * l)
}

/// Two-index form `κ(β1, β2) = mβ2 + nβ1 + m + n - 1 - 2mn`.
pub fn kappa_index(pair: PairMN, idx: IndexPair) -> i64 {
    let (m, n) = (pair.mi(), pair.ni());
    let v = m * i128::from(idx.beta2) + n * i128::from(idx.beta1) + m + n - 1 - 2 * m * n;
    narrow(v)
}

/// Tent function: `β+1` on `[0, m-1]`, `2m-1-β` on `[m, 2m-2]`, zero elsewhere.
pub fn d_m(m: u64, beta: i64) -> u64 {
    let m = i128::from(m);
    let b = i128::from(beta);
    let v = if (0..m).contains(&b) {
        b + 1
    } else if (m..=2 * m - 2).contains(&b) {
        2 * m - 1 - b
    } else {
        0
    };
    v as u64
}

/// `C(β1, β2) = D_m(β1) · D_m(κ(β1, β2))`.
pub fn coeff_c(pair: PairMN, idx: IndexPair) -> BigInt {
    let a = d_m(pair.m(), idx.beta1);
    if a == 0 {
        return BigInt::from(0u8);
    }
    let b = d_m(pair.m(), kappa_index(pair, idx));
    BigInt::from(a) * BigInt::from(b)
}

/// Checks the shift and reflection identities of `L` and `κ`:
///
/// * `L(j+m) = L(j) + n` and `κ(j+m) = κ(j)` for `0 <= j <= 2m-2`,
/// * `L(j) + L(m-2-j) = n+1` and `κ(j) + κ(m-2-j) = m-2` for `0 <= j <= m-2`.
pub fn verify_index_identities(pair: PairMN) -> bool {
    let m = pair.m() as i64;
    let n = pair.n() as i64;
    let shifts = (0..=2 * m - 2).all(|j| {
        l_index(pair, j + m) == l_index(pair, j) + n && kappa(pair, j + m) == kappa(pair, j)
    });
    let reflections = (0..=m - 2).all(|j| {
        l_index(pair, j) + l_index(pair, m - 2 - j) == n + 1
            && kappa(pair, j) + kappa(pair, m - 2 - j) == m - 2
    });
    shifts && reflections
}
