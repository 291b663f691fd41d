//! The `#`-inverse and the error transfer matrix of a structured
//! perturbation.
//!
//! `(sI − A)^#` inverts `sI − A` on the reduced coordinates and zeroes the
//! trace mode, which removes the structural pole at 0. With
//! `Θ11(s) = (sI′ − A11 − ΔA11)⁻¹` the transfer matrix is
//!
//! ```text
//! T(s) = [Θ11 ΔA11   Θ11 ΔA12]
//!        [   0          0    ]
//! ```

use num_complex::Complex64;

use crate::bloch::BlochGenerator;
use crate::linalg::{complex_condition_number, real_spectrum, spectral_norm, to_complex, CMatrix, RMatrix};
use crate::{Error, Result};

use super::steady::SINGULAR_CONDITION;

#[derive(Debug, Clone)]
pub struct TransferMatrixEval {
    pub s: Complex64,
    /// Perturbation strength, when known to the caller.
    pub delta: Option<f64>,
    pub t: CMatrix,
    /// Largest singular value of `t`.
    pub norm: f64,
}

/// `sI′ − block`, where `block` is the leading reduced block.
fn shifted_resolvent_argument(block: &RMatrix, s: Complex64) -> CMatrix {
    let k = block.nrows();
    CMatrix::identity(k, k).map(|z| z * s) - to_complex(block)
}

fn pole_error(block: &RMatrix, s: Complex64) -> Error {
    let eigenvalue = real_spectrum(block)
        .ok()
        .and_then(|ev| {
            ev.into_iter()
                .min_by(|a, b| (a - s).norm().total_cmp(&(b - s).norm()))
        })
        .unwrap_or(s);
    Error::Pole { s, eigenvalue }
}

/// Solves `(sI′ − block) X = rhs`, reporting a pole if the shift is
/// (numerically) an eigenvalue of `block`.
fn resolvent_solve(block: &RMatrix, s: Complex64, rhs: &CMatrix) -> Result<CMatrix> {
    let m = shifted_resolvent_argument(block, s);
    let condition = complex_condition_number(&m);
    if condition.is_nan() || condition > SINGULAR_CONDITION {
        return Err(pole_error(block, s));
    }
    m.col_piv_qr().solve(rhs).ok_or_else(|| pole_error(block, s))
}

/// `(sI − A)^# = [(sI′ − A11)⁻¹ 0; 0 0]`.
pub fn hash_inverse(a: &RMatrix, s: Complex64) -> Result<CMatrix> {
    let d = a.nrows();
    if d != a.ncols() || d < 2 {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: a.ncols(),
        });
    }
    let k = d - 1;
    let a11 = a.view((0, 0), (k, k)).into_owned();
    let inv = resolvent_solve(&a11, s, &CMatrix::identity(k, k))?;
    let mut out = CMatrix::zeros(d, d);
    out.view_mut((0, 0), (k, k)).copy_from(&inv);
    Ok(out)
}

/// Transfer matrix from nominal to error dynamics for the exact generator
/// change `delta_a`, evaluated at the Laplace point `s`.
pub fn transfer_matrix(gen: &BlochGenerator, delta_a: &RMatrix, s: Complex64) -> Result<TransferMatrixEval> {
    let d = gen.bloch_dim();
    if delta_a.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: delta_a.nrows(),
        });
    }
    let k = d - 1;
    let perturbed_a11 = gen.a11() + delta_a.view((0, 0), (k, k));
    let top = to_complex(&delta_a.view((0, 0), (k, d)).into_owned());
    let blocks = resolvent_solve(&perturbed_a11, s, &top)?;
    let mut t = CMatrix::zeros(d, d);
    t.view_mut((0, 0), (k, d)).copy_from(&blocks);
    let norm = spectral_norm(&t);
    Ok(TransferMatrixEval {
        s,
        delta: None,
        t,
        norm,
    })
}
