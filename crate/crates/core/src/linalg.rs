//! Dense linear-algebra helpers shared by the Bloch and analysis modules.
//!
//! Everything here operates on small matrices (at most 16×16), so the
//! routines favour clarity over blocking or in-place tricks.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Iteration cap for the Schur and symmetric eigen solvers.
const MAX_ITER: usize = 10_000;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Tr(A B) without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Largest absolute entry of `A - A†`.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix in ascending order. Only the Hermitian
/// part of `m` is used.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::try_new(herm, f64::EPSILON, MAX_ITER).ok_or(Error::EigenSolver)?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Principal square root of a Hermitian positive-semidefinite matrix.
/// Eigenvalues slightly below zero are clamped.
pub fn hermitian_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::try_new(herm, f64::EPSILON, MAX_ITER).ok_or(Error::EigenSolver)?;
    let roots = eig.eigenvalues.map(|v| Complex64::new(v.max(0.0).sqrt(), 0.0));
    let q = &eig.eigenvectors;
    Ok(q * CMatrix::from_diagonal(&roots) * q.adjoint())
}

/// A fixed, well-conditioned orthogonal matrix used to restart a stalled
/// Schur iteration from a different but similar matrix.
fn restart_basis(n: usize) -> RMatrix {
    RMatrix::from_fn(n, n, |i, j| ((7 * i + 3 * j + 1) as f64).sin()).qr().q()
}

/// nalgebra's shifted QR has no exceptional shifts and occasionally cycles
/// (e.g. the two-qubit generator with s1 = s2 = 0.001). Similar matrices
/// share the spectrum, so retry on `QᵀMQ` and then on `Mᵀ`.
fn schur_with_restarts<T>(m: &DMatrix<T>, rotate: impl Fn(&DMatrix<T>) -> DMatrix<T>) -> Result<Schur<T, nalgebra::Dyn>>
where
    T: nalgebra::ComplexField<RealField = f64>,
{
    Schur::try_new(m.clone(), f64::EPSILON, MAX_ITER)
        .or_else(|| Schur::try_new(rotate(m), f64::EPSILON, MAX_ITER))
        .or_else(|| Schur::try_new(m.transpose(), f64::EPSILON, MAX_ITER))
        .ok_or(Error::EigenSolver)
}

/// Full (complex) spectrum of a real square matrix.
pub fn real_spectrum(a: &RMatrix) -> Result<Vec<Complex64>> {
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    let q = restart_basis(a.nrows());
    let schur = schur_with_restarts(a, |m| q.transpose() * m * &q)?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Full spectrum of a general complex square matrix.
pub fn complex_spectrum(m: &CMatrix) -> Result<Vec<Complex64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let q = to_complex(&restart_basis(m.nrows()));
    let schur = schur_with_restarts(m, |x| q.adjoint() * x * &q)?;
    schur
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
        .ok_or(Error::EigenSolver)
}

/// Largest singular value (operator 2-norm).
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// 2-norm condition number; infinite for exactly singular input.
pub fn condition_number(m: &RMatrix) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub fn complex_condition_number(m: &CMatrix) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|v| Complex64::new(v, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_of_rotation_is_imaginary() {
        let a = RMatrix::from_row_slice(2, 2, &[0.0, -2.0, 2.0, 0.0]);
        let mut ev = real_spectrum(&a).unwrap();
        ev.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((ev[0] - c(0.0, -2.0)).norm() < 1e-12);
        assert!((ev[1] - c(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn hermitian_sqrt_squares_back() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)]);
        let r = hermitian_sqrt(&m).unwrap();
        assert!((&r * &r - &m).norm() < 1e-12);
    }

    #[test]
    fn condition_of_singular_matrix_is_huge() {
        let m = RMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(condition_number(&m) > 1e12);
    }
}
