//! Round-trip a Bell state through the two-qubit Bloch representation and
//! build the generator of a single dephasing channel.

use qrobust::bloch::{
    bloch_to_density, build_basis, density_to_bloch, lindblad_generator, pauli, DensityMatrix,
};
use qrobust::linalg::c;

fn main() -> qrobust::Result<()> {
    let basis = build_basis(4)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // (|01> - |10>)/sqrt(2)
    let bell = DensityMatrix::pure(&[c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)])?;

    let r = density_to_bloch(&bell, &basis)?;
    println!("nonzero Bloch components of the singlet:");
    for (i, x) in r.components().iter().enumerate() {
        if x.abs() > 1e-12 {
            println!("  r[{i:2}] = {x:+.6}");
        }
    }
    println!("|r|^2 = {:.6} (purity {:.6})", r.norm().powi(2), bell.purity());

    let back = bloch_to_density(&r, &basis)?;
    let err = (back.matrix() - bell.matrix()).norm();
    println!("round-trip error {err:.2e}");

    let single = build_basis(2)?;
    let dephase = lindblad_generator(&pauli::z(), 0.5, &single)?;
    println!("qubit dephasing generator at rate 0.5:{dephase:.3}");
    Ok(())
}
