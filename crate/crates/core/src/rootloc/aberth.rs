//! Float root approximation by Aberth–Ehrlich simultaneous iteration.
//!
//! Only used for diagnostics and witnesses; every disc/circle decision in
//! the crate is exact.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::RootError;
use crate::poly::{Scalar, UniPoly};

const MAX_ITERATIONS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FloatRoot {
    pub value: Complex64,
    /// Relative backward error `|p(r)| / Σ |a_i| |r|^i`.
    pub residual: f64,
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `|p(r)| / Σ |a_i| |r|^i` for float coefficients.
pub fn relative_residual(c: &[f64], z: Complex64) -> f64 {
    let (p, _) = horner(c, z);
    let r = z.norm();
    let scale = c.iter().rev().fold(0.0, |acc, a| acc * r + a.abs());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// All complex roots of `p`, each with relative residual at most `tol`.
pub fn numeric_roots<T: Scalar>(p: &UniPoly<T>, tol: f64) -> Result<Vec<FloatRoot>, RootError> {
    let deg = p.degree().ok_or(RootError::ZeroPolynomial)?;
    if deg == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    let val = p.valuation().expect("nonzero");
    let mut roots = vec![
        FloatRoot {
            value: Complex64::new(0.0, 0.0),
            residual: 0.0,
        };
        val
    ];
    let coeffs: Vec<f64> = {
        let c = p.to_f64_coeffs();
        let lead = c[deg];
        c[val..].iter().map(|a| a / lead).collect()
    };
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(roots);
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(RootError::ConvergenceFailure(MAX_ITERATIONS));
    }

    let radius = coeffs[0].abs().powf(1.0 / d as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let (pv, dpv) = horner(&coeffs, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    let out: Vec<FloatRoot> = z
        .into_iter()
        .map(|r| FloatRoot {
            value: r,
            residual: relative_residual(&coeffs, r),
        })
        .collect();
    if out.iter().any(|r| r.residual.is_nan() || r.residual > tol) {
        return Err(RootError::ConvergenceFailure(MAX_ITERATIONS));
    }
    roots.extend(out);
    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    Ok(roots)
}
