//! Steady states, performance measures and classical robustness tools.

mod measures;
mod robustness;
mod stability;
mod steady;
mod transfer;

pub use measures::{concurrence, fidelity, purity, spin_flip, PURE_TOL};
pub use robustness::{steady_state_shift_and_bound, RecordFlag, RobustnessContext, RobustnessRecord};
pub use stability::{margin_from_spectrum, spectrum, stability_margin, ZERO_EIGENVALUE_TOL};
pub use steady::{d_vector, propagate, steady_state, SteadyState, SINGULAR_CONDITION};
pub use transfer::{hash_inverse, transfer_matrix, TransferMatrixEval};
