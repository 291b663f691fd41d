//! Robustness analysis for dissipatively coupled open quantum systems.
//!
//! The crate works in the real Bloch picture: Lindblad models are mapped to a
//! generator `A` acting on the expansion coefficients of the density matrix in
//! an orthonormal Hermitian basis. On top of that it provides steady states,
//! two-qubit concurrence, fidelity, purity, the classical stability margin,
//! the `#`-inverse transfer matrix for structured perturbations with the
//! associated steady-state distance bound, and Kendall-tau concordance between
//! the resulting robustness measures.
//!
//! Module map:
//!
//! - [`bloch`]: basis construction and the operator/Bloch conversions.
//! - [`model`]: the two-qubit lossy-cavity model and its perturbation catalog.
//! - [`analysis`]: steady states, measures, stability margin, transfer matrix.
//! - [`stats`]: tie-corrected Kendall tau and concordance reports.
//! - [`sweep`]: sweep configuration, orchestration and CSV/JSON output.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod analysis;
pub mod bloch;
pub mod error;
pub mod linalg;
pub mod model;
pub mod stats;
pub mod sweep;

pub use error::{Error, Result};
