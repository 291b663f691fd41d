use num_complex::Complex64;

use crate::bloch::{pauli, DensityMatrix};
use crate::linalg::{complex_spectrum, kron, trace_product, CMatrix};
use crate::{Error, Result};

/// Purity slack for the fidelity reference state.
pub const PURE_TOL: f64 = 1e-6;

/// Positivity slack accepted for states handed to the measures.
const MEASURE_PSD_TOL: f64 = 1e-8;

/// Negative eigen-residues of ρρ̃ down to this size are clamped to zero.
/// Matches the positivity slack, since a state that is negative at that
/// level produces residues of the same order.
const SPECTRUM_CLAMP: f64 = MEASURE_PSD_TOL;

/// ρ̃ = (σ^(y) ⊗ σ^(y)) ρ* (σ^(y) ⊗ σ^(y)).
pub fn spin_flip(rho: &CMatrix) -> CMatrix {
    let yy = kron(&pauli::y(), &pauli::y());
    &yy * rho.map(|z| z.conj()) * &yy
}

/// Wootters concurrence of a two-qubit state.
///
/// Uses the square roots of the eigenvalues of ρρ̃, which equal the
/// eigenvalues of `sqrt(sqrt(ρ) ρ̃ sqrt(ρ))` without having to take square
/// roots of a near-singular ρ.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    rho.validate(MEASURE_PSD_TOL)?;
    let m = rho.matrix();
    let product = m * spin_flip(m);
    let mut lambdas = complex_spectrum(&product)?
        .into_iter()
        .map(|z: Complex64| {
            if z.re < -SPECTRUM_CLAMP {
                Err(Error::InvalidState(format!(
                    "rho * rho_tilde has a negative eigenvalue {z}"
                )))
            } else {
                Ok(z.re.max(0.0).sqrt())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0))
}

/// Overlap `Tr(ρ_b ρ_ss)` with a pure reference state.
pub fn fidelity(rho_ss: &DensityMatrix, rho_b: &DensityMatrix) -> Result<f64> {
    if rho_ss.dim() != rho_b.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho_b.dim(),
            actual: rho_ss.dim(),
        });
    }
    let ref_purity = rho_b.purity();
    if (ref_purity - 1.0).abs() > PURE_TOL {
        return Err(Error::ImpureReference(ref_purity));
    }
    Ok(trace_product(rho_b.matrix(), rho_ss.matrix()).re)
}

/// Tr(ρ²).
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}
