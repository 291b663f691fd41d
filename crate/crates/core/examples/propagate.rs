//! Relax from the ground state under the bare model and watch the
//! concurrence build up towards its steady value.

use qrobust::analysis::{concurrence, propagate, steady_state};
use qrobust::bloch::{bloch_to_density, build_basis, density_to_bloch, DensityMatrix};
use qrobust::linalg::c;
use qrobust::model::{build_bloch, ModelParams};

fn main() -> qrobust::Result<()> {
    let gen = build_bloch(&ModelParams::bare())?;
    let basis = build_basis(4)?;
    let zero = c(0.0, 0.0);
    let ground = DensityMatrix::pure(&[c(1.0, 0.0), zero, zero, zero])?;
    let r0 = density_to_bloch(&ground, &basis)?;
    let target = steady_state(&gen)?.bloch();

    println!("{:>8} {:>12} {:>12}", "t", "C", "|r - r_ss|");
    for t in [0.0, 1.0, 10.0, 100.0, 1e3, 1e4] {
        let r = propagate(&gen, &r0, t);
        let rho = DensityMatrix::with_tolerance(bloch_to_density(&r, &basis)?.into_matrix(), 1e-8)?;
        let dist = (r.components() - target.components()).norm();
        println!("{t:>8.0e} {:>12.6} {dist:>12.3e}", concurrence(&rho)?);
    }
    Ok(())
}
