use nalgebra::DVector;

use crate::bloch::{bloch_to_density, build_basis, BlochGenerator, BlochVector, DensityMatrix};
use crate::linalg::{condition_number, RMatrix, RVector};
use crate::{Error, Result};

/// Condition number of `A11` above which the steady state is declared
/// non-unique.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Positivity slack for reconstructed steady states of perturbed models.
const STEADY_PSD_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct SteadyState {
    /// Reduced coordinates `r₁ = −A11⁻¹ c`.
    pub r1: RVector,
    pub rho: DensityMatrix,
    /// `‖A11 r₁ + c‖`.
    pub residual: f64,
    trace_component: f64,
}

impl SteadyState {
    /// Full Bloch vector, `[r₁; 1/√N]`.
    pub fn bloch(&self) -> BlochVector {
        let k = self.r1.len();
        let mut r = RVector::zeros(k + 1);
        r.rows_mut(0, k).copy_from(&self.r1);
        r[k] = self.trace_component;
        BlochVector::new(r)
    }
}

/// Solves `A11 x = rhs` after rejecting an ill-conditioned `A11`.
fn solve_reduced(a11: &RMatrix, rhs: &RVector) -> Result<RVector> {
    let condition = condition_number(a11);
    if condition.is_nan() || condition > SINGULAR_CONDITION {
        return Err(Error::NonUniqueSteadyState { condition });
    }
    a11.clone()
        .col_piv_qr()
        .solve(rhs)
        .ok_or(Error::NonUniqueSteadyState { condition })
}

/// Fixed point of `ṙ₁ = A11 r₁ + c`.
///
/// The result depends only on the trace constant, never on the dynamical
/// part of an initial state.
pub fn steady_state(gen: &BlochGenerator) -> Result<SteadyState> {
    let a11 = gen.a11();
    let r1 = -solve_reduced(&a11, gen.c())?;
    let residual = (&a11 * &r1 + gen.c()).norm();

    let basis = build_basis(gen.hilbert_dim())?;
    let mut ss = SteadyState {
        r1,
        rho: DensityMatrix::maximally_mixed(gen.hilbert_dim()),
        residual,
        trace_component: gen.trace_component(),
    };
    let rho = bloch_to_density(&ss.bloch(), &basis)?;
    rho.validate(STEADY_PSD_TOL)?;
    ss.rho = rho;
    Ok(ss)
}

/// `lim_{s→0} s r̂(s) = [−A11⁻¹ A12; 1] / √N`.
///
/// Its leading block is the steady state of `gen`.
pub fn d_vector(gen: &BlochGenerator) -> Result<RVector> {
    let a11 = gen.a11();
    let head = -solve_reduced(&a11, &gen.a12())?;
    let k = head.len();
    let mut d = DVector::zeros(k + 1);
    d.rows_mut(0, k).copy_from(&head);
    d[k] = 1.0;
    Ok(d * gen.trace_component())
}

/// `r(t) = exp(A t) r₀`.
///
/// # Panics
///
/// Panics if `t` is negative or the dimensions disagree.
pub fn propagate(gen: &BlochGenerator, r0: &BlochVector, t: f64) -> BlochVector {
    assert!(t >= 0.0, "propagation time must be nonnegative, got {t}");
    assert_eq!(r0.len(), gen.bloch_dim());
    if t == 0.0 {
        return r0.clone();
    }
    let propagator = (gen.a() * t).exp();
    BlochVector::new(propagator * r0.components())
}
