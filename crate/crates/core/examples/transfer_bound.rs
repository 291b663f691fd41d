//! The structured-perturbation transfer matrix: its static gain bounds how
//! far the steady state moves, and its gain is symmetric in frequency.

use qrobust::analysis::{steady_state_shift_and_bound, transfer_matrix};
use qrobust::linalg::c;
use qrobust::model::{build_bloch, structure_matrix, ModelParams, PerturbationId, PerturbationStructure};

fn main() -> qrobust::Result<()> {
    let p = ModelParams::bare();
    let gen = build_bloch(&p)?;

    for id in [PerturbationId::S2, PerturbationId::S4, PerturbationId::S7] {
        let s = PerturbationStructure::catalog(id, &p);
        let delta = if s.delta_range.0 < 0.0 { s.delta_range.0 / 2.0 } else { 0.05 };
        let rec = steady_state_shift_and_bound(&p, &s, delta)?;
        let (z1, bound) = (rec.z1_distance.unwrap_or(f64::NAN), rec.z1_bound.unwrap_or(f64::NAN));
        println!("{id:>3} delta={delta:+.3}  z1={z1:.6e}  bound={bound:.6e}");

        let da = structure_matrix(&p, &s, delta)?;
        let w = 0.5;
        let up = transfer_matrix(&gen, &da, c(0.0, w))?.norm;
        let down = transfer_matrix(&gen, &da, c(0.0, -w))?.norm;
        println!("      |T(+{w}j)|={up:.6e}  |T(-{w}j)|={down:.6e}");
    }
    Ok(())
}
