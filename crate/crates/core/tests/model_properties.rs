mod common;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use qrobust::analysis::{concurrence, steady_state, transfer_matrix};
use qrobust::bloch::build_basis;
use qrobust::linalg::c;
use qrobust::model::{
    build_bloch, hamiltonian, perturb, structure_matrix, ModelParams, PerturbationId, PerturbationStructure,
};

fn swap_bloch() -> DMatrix<f64> {
    let basis = build_basis(4).unwrap();
    let (o, l) = (cx(0.0, 0.0), cx(1.0, 0.0));
    #[rustfmt::skip]
    let p = CM::from_row_slice(4, 4, &[
        l, o, o, o,
        o, o, l, o,
        o, l, o, o,
        o, o, o, l,
    ]);
    DMatrix::from_fn(16, 16, |m, n| {
        (basis.element(m) * &p * basis.element(n) * &p).trace().re
    })
}

fn params() -> impl Strategy<Value = ModelParams> {
    (
        (-1.5..1.5f64, -1.5..1.5f64, -1.5..1.5f64, -1.5..1.5f64),
        (-0.5..0.5f64, -0.5..0.5f64, 0.2..1.5f64, 0.2..1.5f64),
        (0.0..0.5f64, 0.0..0.5f64, 0.0..0.5f64, 0.0..0.5f64),
    )
        .prop_map(|((a1r, a1i, a2r, a2i), (d1, d2, s1, s2), (g1r, g2r, g1p, g2p))| ModelParams {
            alpha1: c(a1r, a1i),
            alpha2: c(a2r, a2i),
            delta1: d1,
            delta2: d2,
            s1,
            s2,
            gamma1_r: g1r,
            gamma2_r: g2r,
            gamma1_phi: g1p,
            gamma2_phi: g2p,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn swapping_qubits_conjugates_the_generator(p in params()) {
        let pb = swap_bloch();
        let a = build_bloch(&p).unwrap().a().clone();
        let b = build_bloch(&p.swapped()).unwrap().a().clone();
        let err = (&pb * a * pb.transpose() - b).amax();
        prop_assert!(err < 1e-12, "{err:e}");
    }

    #[test]
    fn hamiltonian_is_hermitian(p in params()) {
        let h = hamiltonian(&p);
        prop_assert!((&h - h.adjoint()).camax() < 1e-15);
    }

    #[test]
    fn structure_matrix_preserves_trace(k in 0usize..6, t in 0.0..1.0f64) {
        let p = ModelParams::bare();
        let s = PerturbationStructure::catalog(PerturbationId::ALL[k], &p);
        let (lo, hi) = s.delta_range;
        let delta = lo + t * (hi - lo);
        let da = structure_matrix(&p, &s, delta).unwrap();
        prop_assert!(da.row(15).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn transfer_gain_is_even_in_frequency(k in 0usize..6, t in 0.05..1.0f64, w in 0.01..5.0f64) {
        let p = ModelParams::bare();
        let s = PerturbationStructure::catalog(PerturbationId::ALL[k], &p);
        let (lo, hi) = s.delta_range;
        let delta = lo + t * (hi - lo);
        let gen = build_bloch(&p).unwrap();
        let da = structure_matrix(&p, &s, delta).unwrap();
        let up = transfer_matrix(&gen, &da, c(0.0, w)).unwrap().norm;
        let down = transfer_matrix(&gen, &da, c(0.0, -w)).unwrap().norm;
        prop_assert!((up - down).abs() <= 1e-10 * up.max(1.0));
    }
}

#[test]
fn bare_reduced_block_has_full_rank() {
    let a11 = build_bloch(&ModelParams::bare()).unwrap().a11();
    let sv = a11.singular_values();
    let rank = sv.iter().filter(|&&x| x > 1e-10 * sv.max()).count();
    assert_eq!(rank, 15);
}

#[test]
fn frequency_symmetry_at_half() {
    let p = ModelParams::bare();
    let gen = build_bloch(&p).unwrap();
    for id in PerturbationId::ALL {
        let s = PerturbationStructure::catalog(id, &p);
        let da = structure_matrix(&p, &s, s.delta_range.1 / 2.0).unwrap();
        let up = transfer_matrix(&gen, &da, c(0.0, 0.5)).unwrap().norm;
        let down = transfer_matrix(&gen, &da, c(0.0, -0.5)).unwrap().norm;
        assert!((up - down).abs() <= 1e-12 * up.max(1.0), "{id}: {up} vs {down}");
    }
}

/// Driving qubit 1 harder gives the same concurrence as driving qubit 2
/// harder in the mirrored model.
#[test]
fn qubit_one_perturbations_mirror_qubit_two() {
    let p = ModelParams::bare();
    let mirrored = p.swapped();
    let s2 = PerturbationStructure::catalog(PerturbationId::S2, &mirrored);
    for k in 0..=8 {
        let delta = -0.2 + 0.05 * k as f64;
        let mut q1 = p;
        q1.alpha1 += c(delta, 0.0);
        let q2 = perturb(&mirrored, &s2, delta).unwrap();
        let c1 = concurrence(&steady_state(&build_bloch(&q1).unwrap()).unwrap().rho).unwrap();
        let c2 = concurrence(&steady_state(&build_bloch(&q2).unwrap()).unwrap().rho).unwrap();
        assert!((c1 - c2).abs() < 1e-9, "delta {delta}: {c1} vs {c2}");
    }
}

/// The generator near the unitary end of S5 once stalled the eigen solver.
#[test]
fn spectrum_exists_close_to_the_unitary_endpoint() {
    let p = ModelParams::bare();
    let s = PerturbationStructure::catalog(PerturbationId::S5, &p);
    let ctx = qrobust::analysis::RobustnessContext::new(&p).unwrap();
    for k in 0..=200 {
        let delta = -1.0 + 1e-5 * 1.05f64.powi(k);
        if delta > 1.0 {
            break;
        }
        let rec = ctx.evaluate(&s, delta).unwrap_or_else(|e| panic!("delta {delta}: {e}"));
        assert!(rec.stability_margin >= 0.0);
    }
    ctx.evaluate(&s, -0.999).unwrap();
}
