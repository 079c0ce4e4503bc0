//! Domain membership, explicit zeros of the Bergman kernel, and the
//! non-vanishing scan over coprime pairs.

mod scan;
mod witness;

pub use scan::{scan, scan_rows_to_csv, ScanOptions, ScanRow, PROVEN_K};
pub use witness::{zero_witness, zero_witnesses, WitnessError, ZeroWitness};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::PairMN;

/// Positive rational exponent `γ = num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gamma {
    pub num: u32,
    pub den: u32,
}

impl Gamma {
    pub fn new(num: u32, den: u32) -> Self {
        assert!(num > 0 && den > 0, "gamma must be positive");
        Gamma { num, den }
    }

    pub fn one() -> Self {
        Gamma { num: 1, den: 1 }
    }

    pub fn as_f64(&self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }
}

impl From<PairMN> for Gamma {
    fn from(p: PairMN) -> Self {
        Gamma::new(p.m() as u32, p.n() as u32)
    }
}

/// A point `(z1, z2)` of `C^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl DomainPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        DomainPoint { z1, z2 }
    }

    pub fn real(z1: f64, z2: f64) -> Self {
        DomainPoint::new(Complex64::new(z1, 0.0), Complex64::new(z2, 0.0))
    }
}

/// Strict membership `|z1|^γ < |z2| < 1`, tested as `|z1|^num < |z2|^den`.
///
/// Integer powers are compared directly; if either power leaves the normal
/// float range the comparison falls back to `num·ln|z1| < den·ln|z2|`.
pub fn in_domain(gamma: Gamma, z: &DomainPoint) -> bool {
    let r1 = z.z1.norm();
    let r2 = z.z2.norm();
    if r2.is_nan() || r2 >= 1.0 || r2 == 0.0 {
        return false;
    }
    if r1 == 0.0 {
        return true;
    }
    let lhs = r1.powi(gamma.num as i32);
    let rhs = r2.powi(gamma.den as i32);
    if lhs.is_normal() && rhs.is_normal() {
        lhs < rhs
    } else {
        f64::from(gamma.num) * r1.ln() < f64::from(gamma.den) * r2.ln()
    }
}

/// Distance-like interior margin `min(1 - |z2|, |z2| - |z1|^γ)`.
pub fn interior_margin(gamma: Gamma, z: &DomainPoint) -> f64 {
    let r1 = z.z1.norm();
    let r2 = z.z2.norm();
    (1.0 - r2).min(r2 - r1.powf(gamma.as_f64()))
}

/// `ψ(z, w) = (z1·conj(w1), z2·conj(w2))`.
pub fn psi(z: &DomainPoint, w: &DomainPoint) -> (Complex64, Complex64) {
    (z.z1 * w.z1.conj(), z.z2 * w.z2.conj())
}
