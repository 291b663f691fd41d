//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own numerics except to fetch the basis elements.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qrobust::bloch::{HermitianBasis, JumpOperator};

pub type CM = DMatrix<Complex64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ρ = G G† / Tr, G with entries uniform in the unit square. Rank-deficient
/// samples (pure states) are mixed in when `rank < n`.
pub fn random_density(rng: &mut impl Rng, n: usize, rank: usize) -> CM {
    let g = CM::from_fn(n, rank, |_, _| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &g * g.adjoint();
    let tr = m.trace();
    m / tr
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> CM {
    let g = CM::from_fn(n, n, |_, _| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&g + g.adjoint()) * cx(0.5, 0.0)
}

pub fn random_operator(rng: &mut impl Rng, n: usize) -> CM {
    CM::from_fn(n, n, |_, _| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// −i[H,ρ] + Σ rate (VρV† − ½{V†V, ρ})
pub fn lindblad_rhs(h: &CM, jumps: &[JumpOperator], rho: &CM) -> CM {
    let i = cx(0.0, 1.0);
    let mut out = (h * rho - rho * h) * (-i);
    for j in jumps {
        let v = &j.operator;
        let vd = v.adjoint();
        let vdv = &vd * v;
        let diss = v * rho * &vd - (&vdv * rho + rho * &vdv) * cx(0.5, 0.0);
        out += diss * cx(j.rate, 0.0);
    }
    out
}

/// Components Tr(M ν_m) of a Hermitian matrix, asserting they are real.
pub fn coordinates(m: &CM, basis: &HermitianBasis) -> DVector<f64> {
    DVector::from_iterator(
        basis.len(),
        basis.elements().iter().map(|nu| {
            let t = (m * nu).trace();
            assert!(t.im.abs() < 1e-10, "non-real coordinate {t}");
            t.re
        }),
    )
}

fn hermitian_sqrt(m: &CM) -> CM {
    let eig = m.clone().symmetric_eigen();
    let roots = eig.eigenvalues.map(|l| cx(l.max(0.0).sqrt(), 0.0));
    &eig.eigenvectors * CM::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}

/// Wootters concurrence through R = sqrt(sqrt(ρ) ρ̃ sqrt(ρ)).
pub fn concurrence_explicit_r(rho: &CM) -> f64 {
    let i = cx(0.0, 1.0);
    let z = cx(0.0, 0.0);
    let sy = CM::from_row_slice(2, 2, &[z, -i, i, z]);
    let yy = sy.kronecker(&sy);
    let tilde = &yy * rho.map(|v| v.conj()) * &yy;
    let s = hermitian_sqrt(rho);
    let inner = &s * tilde * &s;
    let inner = (&inner + inner.adjoint()) * cx(0.5, 0.0);
    let r = hermitian_sqrt(&inner);
    let mut ev: Vec<f64> = r.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    (ev[0] - ev[1] - ev[2] - ev[3]).max(0.0)
}

/// Werner state p|Ψ⁻⟩⟨Ψ⁻| + (1−p) I/4.
pub fn werner(p: f64) -> CM {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi = DVector::from_vec(vec![cx(0.0, 0.0), cx(h, 0.0), cx(-h, 0.0), cx(0.0, 0.0)]);
    let proj = &psi * psi.adjoint();
    proj * cx(p, 0.0) + CM::identity(4, 4) * cx((1.0 - p) / 4.0, 0.0)
}

/// Tau-b by enumerating every pair with integer comparisons.
pub fn kendall_brute_force(x: &[i64], y: &[i64]) -> Option<f64> {
    use std::cmp::Ordering::*;
    let n = x.len();
    let (mut nc, mut nd, mut tx, mut ty) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in (i + 1)..n {
            let a = x[i].cmp(&x[j]);
            let b = y[i].cmp(&y[j]);
            if a == Equal {
                tx += 1;
            }
            if b == Equal {
                ty += 1;
            }
            match (a, b) {
                (Equal, _) | (_, Equal) => {}
                _ if a == b => nc += 1,
                _ => nd += 1,
            }
        }
    }
    let n0 = (n * (n - 1) / 2) as i64;
    let denom = ((n0 - tx) as f64) * ((n0 - ty) as f64);
    (denom != 0.0).then(|| (nc - nd) as f64 / denom.sqrt())
}
