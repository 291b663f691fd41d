//! Two qubits dissipatively coupled through a lossy (adiabatically
//! eliminated) cavity, and the catalog of structured perturbations.
//!
//! Qubit 1 is the left tensor factor; the computational basis is
//! `|00⟩, |01⟩, |10⟩, |11⟩` with the ground state of each qubit first.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::{
    assemble, build_basis, c_vector, hamiltonian_generator, lindblad_generator, pauli,
    BlochGenerator, JumpOperator,
};
use crate::linalg::{CMatrix, RMatrix};
use crate::{Error, Result};

/// Physical parameters. Frequencies are in units of 10 MHz.
///
/// The `gamma_*` fields are amplitudes; they enter the master equation as
/// rates γ² on unit-normalized jump operators.
///
/// When deserialized, omitted fields take their bare-model values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    #[serde(with = "complex_param")]
    pub alpha1: Complex64,
    #[serde(with = "complex_param")]
    pub alpha2: Complex64,
    pub delta1: f64,
    pub delta2: f64,
    pub s1: f64,
    pub s2: f64,
    pub gamma1_r: f64,
    pub gamma2_r: f64,
    pub gamma1_phi: f64,
    pub gamma2_phi: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::bare()
    }
}

impl ModelParams {
    /// α₁ = α₂ = 1, Δ₁ = −Δ₂ = 0.1, s₁ = s₂ = 1, no single-qubit noise.
    pub fn bare() -> Self {
        ModelParams {
            alpha1: Complex64::new(1.0, 0.0),
            alpha2: Complex64::new(1.0, 0.0),
            delta1: 0.1,
            delta2: -0.1,
            s1: 1.0,
            s2: 1.0,
            gamma1_r: 0.0,
            gamma2_r: 0.0,
            gamma1_phi: 0.0,
            gamma2_phi: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for param in [Param::Gamma1R, Param::Gamma2R, Param::Gamma1Phi, Param::Gamma2Phi] {
            let value = self.get(param);
            if value < 0.0 {
                return Err(Error::NegativeParameter {
                    name: param.name(),
                    value,
                });
            }
        }
        Ok(())
    }

    /// Real coordinate along `param`; the real part for the Rabi frequencies.
    pub fn get(&self, param: Param) -> f64 {
        match param {
            Param::Alpha1 => self.alpha1.re,
            Param::Alpha2 => self.alpha2.re,
            Param::Delta1 => self.delta1,
            Param::Delta2 => self.delta2,
            Param::S1 => self.s1,
            Param::S2 => self.s2,
            Param::Gamma1R => self.gamma1_r,
            Param::Gamma2R => self.gamma2_r,
            Param::Gamma1Phi => self.gamma1_phi,
            Param::Gamma2Phi => self.gamma2_phi,
        }
    }

    fn shift(&mut self, param: Param, amount: f64) {
        match param {
            Param::Alpha1 => self.alpha1.re += amount,
            Param::Alpha2 => self.alpha2.re += amount,
            Param::Delta1 => self.delta1 += amount,
            Param::Delta2 => self.delta2 += amount,
            Param::S1 => self.s1 += amount,
            Param::S2 => self.s2 += amount,
            Param::Gamma1R => self.gamma1_r += amount,
            Param::Gamma2R => self.gamma2_r += amount,
            Param::Gamma1Phi => self.gamma1_phi += amount,
            Param::Gamma2Phi => self.gamma2_phi += amount,
        }
    }

    /// Exchanges the roles of the two qubits.
    pub fn swapped(&self) -> Self {
        ModelParams {
            alpha1: self.alpha2,
            alpha2: self.alpha1,
            delta1: self.delta2,
            delta2: self.delta1,
            s1: self.s2,
            s2: self.s1,
            gamma1_r: self.gamma2_r,
            gamma2_r: self.gamma1_r,
            gamma1_phi: self.gamma2_phi,
            gamma2_phi: self.gamma1_phi,
        }
    }
}

/// Coordinates of parameter space, in catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Alpha1,
    Alpha2,
    Delta1,
    Delta2,
    S1,
    S2,
    Gamma1R,
    Gamma2R,
    Gamma1Phi,
    Gamma2Phi,
}

impl Param {
    pub const ALL: [Param; 10] = [
        Param::Alpha1,
        Param::Alpha2,
        Param::Delta1,
        Param::Delta2,
        Param::S1,
        Param::S2,
        Param::Gamma1R,
        Param::Gamma2R,
        Param::Gamma1Phi,
        Param::Gamma2Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha1 => "alpha1",
            Param::Alpha2 => "alpha2",
            Param::Delta1 => "delta1",
            Param::Delta2 => "delta2",
            Param::S1 => "s1",
            Param::S2 => "s2",
            Param::Gamma1R => "gamma1_r",
            Param::Gamma2R => "gamma2_r",
            Param::Gamma1Phi => "gamma1_phi",
            Param::Gamma2Phi => "gamma2_phi",
        }
    }
}

/// H = Σ_ℓ α_ℓ σ_ℓ⁺ + α_ℓ* σ_ℓ⁻ + Δ_ℓ σ_ℓ⁺σ_ℓ⁻.
pub fn hamiltonian(p: &ModelParams) -> CMatrix {
    let plus = pauli::plus();
    let minus = pauli::minus();
    let number = &plus * &minus;
    let single = |alpha: Complex64, detuning: f64| -> CMatrix {
        plus.map(|z| z * alpha) + minus.map(|z| z * alpha.conj()) + number.map(|z| z * detuning)
    };
    pauli::on_first(&single(p.alpha1, p.delta1)) + pauli::on_second(&single(p.alpha2, p.delta2))
}

/// The five channels, in order: collective coupling `s₁σ₁⁻ + s₂σ₂⁻` at
/// rate 1, then `σ₁⁻`, `σ₂⁻`, `σ₁^(z)`, `σ₂^(z)` at the squared amplitudes.
pub fn jump_operators(p: &ModelParams) -> Result<Vec<JumpOperator>> {
    p.validate()?;
    let s1m = pauli::on_first(&pauli::minus());
    let s2m = pauli::on_second(&pauli::minus());
    let collective = s1m.map(|z| z * p.s1) + s2m.map(|z| z * p.s2);
    Ok(vec![
        JumpOperator::new(collective, 1.0),
        JumpOperator::new(s1m, p.gamma1_r * p.gamma1_r),
        JumpOperator::new(s2m, p.gamma2_r * p.gamma2_r),
        JumpOperator::new(pauli::on_first(&pauli::z()), p.gamma1_phi * p.gamma1_phi),
        JumpOperator::new(pauli::on_second(&pauli::z()), p.gamma2_phi * p.gamma2_phi),
    ])
}

/// 16×16 Bloch generator of the model.
pub fn build_bloch(p: &ModelParams) -> Result<BlochGenerator> {
    let basis = build_basis(4)?;
    let jumps = jump_operators(p)?;
    let a_h = hamiltonian_generator(&hamiltonian(p), &basis)?;
    let a_v = jumps
        .iter()
        .map(|j| lindblad_generator(&j.operator, j.rate, &basis))
        .collect::<Result<Vec<_>>>()?;
    let gen = assemble(&a_h, &a_v)?;
    debug_assert!((gen.c() - c_vector(&jumps, &basis)?).amax() < 1e-12);
    Ok(gen)
}

/// Catalog labels of the structured perturbations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PerturbationId {
    S2,
    S4,
    S5,
    S7,
    S9,
    S10,
}

impl PerturbationId {
    pub const ALL: [PerturbationId; 6] = [
        PerturbationId::S2,
        PerturbationId::S4,
        PerturbationId::S5,
        PerturbationId::S7,
        PerturbationId::S9,
        PerturbationId::S10,
    ];

    /// Direction in (α₁, α₂, Δ₁, Δ₂, s₁, s₂, γ₁⁽ʳ⁾, γ₂⁽ʳ⁾, γ₁⁽ᶠ⁾, γ₂⁽ᶠ⁾).
    pub fn direction(self) -> [f64; 10] {
        let mut d = [0.0; 10];
        match self {
            PerturbationId::S2 => d[1] = 1.0,
            PerturbationId::S4 => d[3] = 1.0,
            PerturbationId::S5 => {
                d[4] = 1.0;
                d[5] = 1.0;
            }
            PerturbationId::S7 => d[7] = 1.0,
            PerturbationId::S9 => d[9] = 1.0,
            PerturbationId::S10 => {
                d[4] = 1.0;
                d[5] = -1.0;
            }
        }
        d
    }

    /// True when the perturbation only moves Hamiltonian parameters, so the
    /// generator change is exactly linear in δ.
    pub fn is_hamiltonian(self) -> bool {
        matches!(self, PerturbationId::S2 | PerturbationId::S4)
    }
}

impl fmt::Display for PerturbationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PerturbationId::S2 => "S2",
            PerturbationId::S4 => "S4",
            PerturbationId::S5 => "S5",
            PerturbationId::S7 => "S7",
            PerturbationId::S9 => "S9",
            PerturbationId::S10 => "S10",
        };
        f.write_str(s)
    }
}

impl FromStr for PerturbationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S2" => Ok(PerturbationId::S2),
            "S4" => Ok(PerturbationId::S4),
            "S5" => Ok(PerturbationId::S5),
            "S7" => Ok(PerturbationId::S7),
            "S9" => Ok(PerturbationId::S9),
            "S10" => Ok(PerturbationId::S10),
            other => Err(Error::Config(format!(
                "unknown perturbation '{other}', expected one of S2, S4, S5, S7, S9, S10"
            ))),
        }
    }
}

/// A catalog direction with its admissible δ interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationStructure {
    pub id: PerturbationId,
    pub direction: [f64; 10],
    pub delta_range: (f64, f64),
}

/// Slack on range checks so that float grids hitting an endpoint pass.
const RANGE_SLACK: f64 = 1e-12;

impl PerturbationStructure {
    /// Catalog entry with its default range for the model `p`.
    ///
    /// δ₂ ∈ [−0.2, 0.2], δ₄ ∈ [−|Δ₂|, |Δ₂|], δ₅, δ₁₀ ∈ [−1, 1],
    /// δ₇, δ₉ ∈ [0, 1].
    pub fn catalog(id: PerturbationId, p: &ModelParams) -> Self {
        let delta_range = match id {
            PerturbationId::S2 => (-0.2, 0.2),
            PerturbationId::S4 => (-p.delta2.abs(), p.delta2.abs()),
            PerturbationId::S5 | PerturbationId::S10 => (-1.0, 1.0),
            PerturbationId::S7 | PerturbationId::S9 => (0.0, 1.0),
        };
        PerturbationStructure {
            id,
            direction: id.direction(),
            delta_range,
        }
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        self.delta_range = (lo, hi);
        self
    }

    /// Same direction without a range restriction. Negative noise
    /// amplitudes are still rejected by [`perturb`].
    pub fn unbounded(self) -> Self {
        self.with_range(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, delta: f64) -> bool {
        let (lo, hi) = self.delta_range;
        delta >= lo - RANGE_SLACK && delta <= hi + RANGE_SLACK
    }
}

/// `p + δ · direction`.
pub fn perturb(p: &ModelParams, s: &PerturbationStructure, delta: f64) -> Result<ModelParams> {
    if !s.contains(delta) {
        return Err(Error::RangeViolation {
            id: s.id.to_string(),
            delta,
            lo: s.delta_range.0,
            hi: s.delta_range.1,
        });
    }
    let mut out = *p;
    for (param, weight) in Param::ALL.iter().zip(s.direction) {
        if weight != 0.0 {
            out.shift(*param, weight * delta);
        }
    }
    out.validate()?;
    Ok(out)
}

/// Exact generator change `A(perturb(p, S, δ)) − A(p)`.
///
/// Linear in δ only for the Hamiltonian directions; the coupling and noise
/// directions enter the dissipator quadratically.
pub fn structure_matrix(p: &ModelParams, s: &PerturbationStructure, delta: f64) -> Result<RMatrix> {
    let perturbed = perturb(p, s, delta)?;
    Ok(build_bloch(&perturbed)?.a() - build_bloch(p)?.a())
}

mod complex_param {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Real(f64),
        Complex { re: f64, #[serde(default)] im: f64 },
    }

    pub fn serialize<S: Serializer>(z: &Complex64, ser: S) -> Result<S::Ok, S::Error> {
        Repr::Complex { re: z.re, im: z.im }.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Complex64, D::Error> {
        Ok(match Repr::deserialize(de)? {
            Repr::Real(re) => Complex64::new(re, 0.0),
            Repr::Complex { re, im } => Complex64::new(re, im),
        })
    }
}
