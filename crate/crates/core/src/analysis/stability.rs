use num_complex::Complex64;

use crate::linalg::{real_spectrum, RMatrix};
use crate::Result;

/// Eigenvalues with modulus at or below this are treated as structural zeros.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

/// Complex spectrum of a real generator.
pub fn spectrum(a: &RMatrix) -> Result<Vec<Complex64>> {
    real_spectrum(a)
}

/// Distance of the rightmost nonzero pole from the imaginary axis.
///
/// Zero-modulus eigenvalues are discarded; if nothing is left, or the
/// remaining poles sit on the imaginary axis, the margin is 0.
pub fn margin_from_spectrum(eigenvalues: &[Complex64]) -> f64 {
    let rightmost = eigenvalues
        .iter()
        .filter(|z| z.norm() > ZERO_EIGENVALUE_TOL)
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if rightmost == f64::NEG_INFINITY || rightmost.abs() <= ZERO_EIGENVALUE_TOL {
        0.0
    } else {
        rightmost.abs()
    }
}

/// Classical stability margin G of a generator.
pub fn stability_margin(a: &RMatrix) -> Result<f64> {
    Ok(margin_from_spectrum(&spectrum(a)?))
}
