//! Operator picture ⇄ real Bloch picture.
//!
//! A density matrix ρ on an N-dimensional Hilbert space is expanded over an
//! orthonormal Hermitian basis {ν_n}, n = 1..N², with the identity-proportional
//! element last. With `ν_{N²} = I/√N` the trace component of every state is
//! the constant `1/√N`, the Lindblad generator becomes a real N²×N² matrix `A`
//! whose last row vanishes, and `|r|² = Tr ρ²`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::linalg::{
    anticommutator, c, commutator, hermitian_eigenvalues, hermiticity_deviation, kron,
    trace_product, CMatrix, RMatrix, RVector,
};
use crate::{Error, Result};

/// Hermiticity tolerance for operators handed to the generator builders.
pub const OPERATOR_TOL: f64 = 1e-10;
/// Hermiticity tolerance for density matrices.
pub const STATE_HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
/// Default lower bound on the smallest eigenvalue of a valid state.
pub const PSD_TOL: f64 = 1e-10;

/// Pauli matrices with σ⁺ = [[0,0],[1,0]] and σ^(y) = [[0,i],[−i,0]].
pub mod pauli {
    use super::*;

    pub fn identity() -> CMatrix {
        CMatrix::identity(2, 2)
    }

    pub fn x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    pub fn y() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)])
    }

    pub fn z() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
    }

    /// Raising operator.
    pub fn plus() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    /// Lowering operator, `plus()†`.
    pub fn minus() -> CMatrix {
        plus().adjoint()
    }

    /// `op ⊗ I`: acts on qubit 1 (left tensor factor).
    pub fn on_first(op: &CMatrix) -> CMatrix {
        kron(op, &identity())
    }

    /// `I ⊗ op`: acts on qubit 2.
    pub fn on_second(op: &CMatrix) -> CMatrix {
        kron(&identity(), op)
    }
}

/// Trace component `r_{N²} = Tr(ν_{N²} ρ) = 1/√N` shared by all states.
pub fn trace_component(hilbert_dim: usize) -> f64 {
    1.0 / (hilbert_dim as f64).sqrt()
}

/// A Hermitian, unit-trace, positive-semidefinite matrix.
///
/// [`DensityMatrix::new`] enforces the invariants; states reconstructed from
/// (possibly perturbed) Bloch vectors go through
/// [`DensityMatrix::new_unchecked`] and can be checked later with
/// [`DensityMatrix::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, PSD_TOL)
    }

    /// Validates with a custom lower bound on the smallest eigenvalue.
    pub fn with_tolerance(matrix: CMatrix, psd_tol: f64) -> Result<Self> {
        let rho = Self::new_unchecked(matrix);
        rho.validate(psd_tol)?;
        Ok(rho)
    }

    pub fn new_unchecked(matrix: CMatrix) -> Self {
        DensityMatrix { matrix }
    }

    /// Projector onto the normalized `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let v = DVector::from_column_slice(psi);
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v = v.unscale(norm);
        Self::new(&v * v.adjoint())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let scale = 1.0 / dim as f64;
        DensityMatrix {
            matrix: CMatrix::identity(dim, dim).map(|z| z * scale),
        }
    }

    pub fn validate(&self, psd_tol: f64) -> Result<()> {
        let m = &self.matrix;
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::InvalidState(format!(
                "not a square matrix ({}x{})",
                m.nrows(),
                m.ncols()
            )));
        }
        let herm = hermiticity_deviation(m);
        if herm > STATE_HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:.3e})")));
        }
        let tr = m.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min_eig = hermitian_eigenvalues(m)?[0];
        if min_eig < -psd_tol {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> f64 {
        trace_product(&self.matrix, &self.matrix).re
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }
}

/// Ordered orthonormal Hermitian basis with the identity element last.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    dim: usize,
    elements: Vec<CMatrix>,
}

impl HermitianBasis {
    /// Hilbert-space dimension N.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of elements, N².
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn element(&self, n: usize) -> &CMatrix {
        &self.elements[n]
    }

    fn check_operator(&self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: m.nrows(),
            });
        }
        Ok(())
    }
}

/// Builds the basis for an N-dimensional Hilbert space.
///
/// - N = 2: `σx/√2, σy/√2, σz/√2, I/√2`.
/// - N = 4: `(σi ⊗ σj)/2` with (i, j) lexicographic over (x, y, z, I), so
///   `(I ⊗ I)/2` is last.
/// - other N: normalized generalized Gell-Mann matrices (symmetric
///   off-diagonal, antisymmetric off-diagonal, diagonal), then `I/√N`.
pub fn build_basis(n: usize) -> Result<HermitianBasis> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let paulis = [pauli::x(), pauli::y(), pauli::z(), pauli::identity()];
    let elements = match n {
        2 => paulis
            .iter()
            .map(|p| p.map(|z| z / 2f64.sqrt()))
            .collect(),
        4 => {
            let mut out = Vec::with_capacity(16);
            for a in &paulis {
                for b in &paulis {
                    out.push(kron(a, b).map(|z| z * 0.5));
                }
            }
            out
        }
        _ => gell_mann(n),
    };
    Ok(HermitianBasis { dim: n, elements })
}

fn gell_mann(n: usize) -> Vec<CMatrix> {
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(j, k)] = c(inv_sqrt2, 0.0);
            m[(k, j)] = c(inv_sqrt2, 0.0);
            out.push(m);
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(j, k)] = c(0.0, -inv_sqrt2);
            m[(k, j)] = c(0.0, inv_sqrt2);
            out.push(m);
        }
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(n, n);
        for j in 0..l {
            m[(j, j)] = c(norm, 0.0);
        }
        m[(l, l)] = c(-(l as f64) * norm, 0.0);
        out.push(m);
    }
    out.push(CMatrix::identity(n, n).map(|z| z / (n as f64).sqrt()));
    out
}

/// Real coefficient vector `r_n = Tr(ν_n ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector(RVector);

impl BlochVector {
    pub fn new(components: RVector) -> Self {
        BlochVector(components)
    }

    pub fn from_slice(components: &[f64]) -> Self {
        BlochVector(RVector::from_column_slice(components))
    }

    pub fn components(&self) -> &RVector {
        &self.0
    }

    pub fn into_inner(self) -> RVector {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The leading N² − 1 coordinates (the dynamical part).
    pub fn reduced(&self) -> RVector {
        self.0.rows(0, self.0.len() - 1).into_owned()
    }

    pub fn trace_component(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.dot(&other.0)
    }
}

pub fn density_to_bloch(rho: &DensityMatrix, basis: &HermitianBasis) -> Result<BlochVector> {
    basis.check_operator(rho.matrix())?;
    let mut r = RVector::zeros(basis.len());
    for (n, nu) in basis.elements().iter().enumerate() {
        let t = trace_product(nu, rho.matrix());
        if t.im.abs() > 1e-10 {
            return Err(Error::NotHermitian(t.im.abs()));
        }
        r[n] = t.re;
    }
    Ok(BlochVector(r))
}

/// `ρ = Σ r_n ν_n`. Positivity is not checked.
pub fn bloch_to_density(r: &BlochVector, basis: &HermitianBasis) -> Result<DensityMatrix> {
    if r.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            actual: r.len(),
        });
    }
    let n = basis.dim();
    let mut m = CMatrix::zeros(n, n);
    for (coeff, nu) in r.components().iter().zip(basis.elements()) {
        m += nu.map(|z| z * *coeff);
    }
    Ok(DensityMatrix::new_unchecked(m))
}

/// Bloch image of `−i[H, ·]`: `(A_H)_{mn} = Tr(iH[ν_m, ν_n])`.
///
/// The result is antisymmetric with vanishing last row and column.
pub fn hamiltonian_generator(h: &CMatrix, basis: &HermitianBasis) -> Result<RMatrix> {
    basis.check_operator(h)?;
    let dev = hermiticity_deviation(h);
    if dev > OPERATOR_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let ih = h.map(|z| z * Complex64::i());
    let d = basis.len();
    let mut a = RMatrix::zeros(d, d);
    for m in 0..d {
        for n in (m + 1)..d {
            let val = trace_product(&ih, &commutator(basis.element(m), basis.element(n))).re;
            a[(m, n)] = val;
            a[(n, m)] = -val;
        }
    }
    Ok(a)
}

/// Bloch image of `rate · 𝔏(V)`:
/// `rate · Tr(V† ν_m V ν_n − ½ V†V {ν_m, ν_n})`.
pub fn lindblad_generator(v: &CMatrix, rate: f64, basis: &HermitianBasis) -> Result<RMatrix> {
    basis.check_operator(v)?;
    if rate < 0.0 {
        return Err(Error::NegativeRate(rate));
    }
    let d = basis.len();
    let mut a = RMatrix::zeros(d, d);
    if rate == 0.0 {
        return Ok(a);
    }
    let vd = v.adjoint();
    let vdv = &vd * v;
    for m in 0..d {
        let vd_num_v = &vd * basis.element(m) * v;
        for n in 0..d {
            let jump = trace_product(&vd_num_v, basis.element(n));
            let anti = trace_product(&vdv, &anticommutator(basis.element(m), basis.element(n)));
            a[(m, n)] = rate * (jump - anti * 0.5).re;
        }
    }
    Ok(a)
}

/// A jump operator together with its rate γ².
#[derive(Debug, Clone)]
pub struct JumpOperator {
    pub operator: CMatrix,
    pub rate: f64,
}

impl JumpOperator {
    pub fn new(operator: CMatrix, rate: f64) -> Self {
        JumpOperator { operator, rate }
    }
}

/// Affine drive of the reduced dynamics,
/// `c_m = (1/N) Σ_k γ_k² Tr([V_k, V_k†] ν_m)` for m < N².
///
/// With `ν_{N²} = I/√N` this coincides with `A12 / √N`.
pub fn c_vector(jump_ops: &[JumpOperator], basis: &HermitianBasis) -> Result<RVector> {
    let d = basis.len();
    let n = basis.dim() as f64;
    let mut cv = RVector::zeros(d - 1);
    for op in jump_ops {
        basis.check_operator(&op.operator)?;
        if op.rate < 0.0 {
            return Err(Error::NegativeRate(op.rate));
        }
        let comm = commutator(&op.operator, &op.operator.adjoint());
        for m in 0..d - 1 {
            cv[m] += op.rate * trace_product(&comm, basis.element(m)).re / n;
        }
    }
    Ok(cv)
}

/// Real Bloch generator `A` with its block partition
/// `A = [A11 A12; 0 0]` and affine vector `c = A12 · r_{N²}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochGenerator {
    hilbert_dim: usize,
    a: RMatrix,
    c: RVector,
}

/// Sums Hamiltonian and dissipator generators into a [`BlochGenerator`].
pub fn assemble(a_h: &RMatrix, a_v: &[RMatrix]) -> Result<BlochGenerator> {
    let mut a = a_h.clone();
    for term in a_v {
        if term.shape() != a.shape() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                actual: term.nrows(),
            });
        }
        a += term;
    }
    BlochGenerator::from_matrix(a)
}

impl BlochGenerator {
    /// Wraps a full N²×N² generator. The last row must vanish to 1e-10; it
    /// is then set to exactly zero.
    pub fn from_matrix(mut a: RMatrix) -> Result<Self> {
        let d = a.nrows();
        if d != a.ncols() {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: a.ncols(),
            });
        }
        let hilbert_dim = (d as f64).sqrt().round() as usize;
        if hilbert_dim < 2 || hilbert_dim * hilbert_dim != d {
            return Err(Error::InvalidDimension(hilbert_dim));
        }
        let last = a.row(d - 1).amax();
        if last > OPERATOR_TOL {
            return Err(Error::TraceNotPreserved(last));
        }
        a.row_mut(d - 1).fill(0.0);
        let c = a.view((0, d - 1), (d - 1, 1)).column(0) * trace_component(hilbert_dim);
        Ok(BlochGenerator { hilbert_dim, a, c })
    }

    pub fn hilbert_dim(&self) -> usize {
        self.hilbert_dim
    }

    /// N².
    pub fn bloch_dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &RMatrix {
        &self.a
    }

    pub fn a11(&self) -> RMatrix {
        let k = self.bloch_dim() - 1;
        self.a.view((0, 0), (k, k)).into_owned()
    }

    pub fn a12(&self) -> RVector {
        let k = self.bloch_dim() - 1;
        self.a.view((0, k), (k, 1)).column(0).into_owned()
    }

    pub fn c(&self) -> &RVector {
        &self.c
    }

    pub fn trace_component(&self) -> f64 {
        trace_component(self.hilbert_dim)
    }

    /// `ṙ = A r`.
    pub fn derivative(&self, r: &BlochVector) -> BlochVector {
        BlochVector(&self.a * r.components())
    }
}
