use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::{BlochGenerator, DensityMatrix};
use crate::model::{build_bloch, perturb, ModelParams, PerturbationStructure};
use crate::{Error, Result};

use super::measures::{concurrence, fidelity, purity, PURE_TOL};
use super::stability::stability_margin;
use super::steady::{d_vector, steady_state, SteadyState};
use super::transfer::transfer_matrix;

/// Slack on the steady-state distance bound.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordFlag {
    /// The perturbed `A11` is singular (e.g. purely unitary dynamics).
    NonUniqueSteadyState,
    /// The perturbed steady state failed the density-matrix checks.
    NonPhysicalState,
    /// The unperturbed steady state is mixed, so no fidelity is reported.
    ImpureReference,
    /// `z1_distance` exceeded `z1_bound`; should never appear.
    BoundViolated,
}

impl RecordFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordFlag::NonUniqueSteadyState => "non-unique-steady-state",
            RecordFlag::NonPhysicalState => "non-physical-state",
            RecordFlag::ImpureReference => "impure-reference",
            RecordFlag::BoundViolated => "bound-violated",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            RecordFlag::NonUniqueSteadyState,
            RecordFlag::NonPhysicalState,
            RecordFlag::ImpureReference,
            RecordFlag::BoundViolated,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
    }
}

/// Robustness measures of one perturbed model against the nominal one.
///
/// Fields that need the perturbed steady state are `None` when it does not
/// exist; the reason is in `flags`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessRecord {
    pub delta: f64,
    pub purity: Option<f64>,
    /// `E_C = 1 − C`.
    pub concurrence_error: Option<f64>,
    /// `E_F = 1 − F` against the nominal steady state.
    pub fidelity_error: Option<f64>,
    pub stability_margin: f64,
    /// `‖T(0, δ)‖`.
    pub transfer_norm0: Option<f64>,
    /// `‖r_ss(δ) − r_ss(0)‖`.
    pub z1_distance: Option<f64>,
    /// `‖T(0, δ)‖ ‖d‖`.
    pub z1_bound: Option<f64>,
    /// `|z1² − 2(1 − F)|`, only when the perturbed state is pure.
    pub pure_identity_residual: Option<f64>,
    #[serde(default)]
    pub flags: Vec<RecordFlag>,
}

impl RobustnessRecord {
    /// True when the steady-state measures are missing.
    pub fn is_flagged(&self) -> bool {
        self.flags
            .iter()
            .any(|f| matches!(f, RecordFlag::NonUniqueSteadyState | RecordFlag::NonPhysicalState))
    }

    fn unavailable(delta: f64, stability_margin: f64, flag: RecordFlag) -> Self {
        RobustnessRecord {
            delta,
            purity: None,
            concurrence_error: None,
            fidelity_error: None,
            stability_margin,
            transfer_norm0: None,
            z1_distance: None,
            z1_bound: None,
            pure_identity_residual: None,
            flags: vec![flag],
        }
    }
}

/// Nominal-model quantities shared by every point of a sweep.
#[derive(Debug, Clone)]
pub struct RobustnessContext {
    params: ModelParams,
    generator: BlochGenerator,
    steady: SteadyState,
    d_norm: f64,
    reference: Option<DensityMatrix>,
}

impl RobustnessContext {
    /// Fails if the nominal model has no unique steady state.
    pub fn new(params: &ModelParams) -> Result<Self> {
        let generator = build_bloch(params)?;
        let steady = steady_state(&generator)?;
        let d_norm = d_vector(&generator)?.norm();
        let reference = ((steady.rho.purity() - 1.0).abs() <= PURE_TOL).then(|| steady.rho.clone());
        Ok(RobustnessContext {
            params: *params,
            generator,
            steady,
            d_norm,
            reference,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn generator(&self) -> &BlochGenerator {
        &self.generator
    }

    pub fn steady_state(&self) -> &SteadyState {
        &self.steady
    }

    pub fn d_norm(&self) -> f64 {
        self.d_norm
    }

    /// Evaluates one perturbation strength. Range violations are errors;
    /// a missing perturbed steady state is reported through the flags.
    pub fn evaluate(&self, structure: &PerturbationStructure, delta: f64) -> Result<RobustnessRecord> {
        let perturbed = perturb(&self.params, structure, delta)?;
        let gen = build_bloch(&perturbed)?;
        let margin = stability_margin(gen.a())?;

        let ss = match steady_state(&gen) {
            Ok(ss) => ss,
            Err(Error::NonUniqueSteadyState { .. }) => {
                return Ok(RobustnessRecord::unavailable(delta, margin, RecordFlag::NonUniqueSteadyState))
            }
            Err(Error::InvalidState(_)) => {
                return Ok(RobustnessRecord::unavailable(delta, margin, RecordFlag::NonPhysicalState))
            }
            Err(e) => return Err(e),
        };

        let delta_a = gen.a() - self.generator.a();
        let transfer = match transfer_matrix(&self.generator, &delta_a, Complex64::new(0.0, 0.0)) {
            Ok(t) => t,
            Err(Error::Pole { .. }) => {
                return Ok(RobustnessRecord::unavailable(delta, margin, RecordFlag::NonUniqueSteadyState))
            }
            Err(e) => return Err(e),
        };

        let mut flags = Vec::new();
        let state_purity = purity(&ss.rho);
        let c = concurrence(&ss.rho)?;
        let z1 = (&ss.r1 - &self.steady.r1).norm();
        let bound = transfer.norm * self.d_norm;
        if z1 > bound + BOUND_SLACK {
            flags.push(RecordFlag::BoundViolated);
        }

        let fid = match &self.reference {
            Some(reference) => Some(fidelity(&ss.rho, reference)?),
            None => {
                flags.push(RecordFlag::ImpureReference);
                None
            }
        };
        let pure_identity_residual = match fid {
            Some(f) if (state_purity - 1.0).abs() <= PURE_TOL => Some((z1 * z1 - 2.0 * (1.0 - f)).abs()),
            _ => None,
        };

        Ok(RobustnessRecord {
            delta,
            purity: Some(state_purity),
            concurrence_error: Some(1.0 - c),
            fidelity_error: fid.map(|f| (1.0 - f).max(0.0)),
            stability_margin: margin,
            transfer_norm0: Some(transfer.norm),
            z1_distance: Some(z1),
            z1_bound: Some(bound),
            pure_identity_residual,
            flags,
        })
    }
}

/// One-shot evaluation of the steady-state shift, its transfer-matrix bound
/// and the performance measures of the perturbed model.
pub fn steady_state_shift_and_bound(
    p: &ModelParams,
    structure: &PerturbationStructure,
    delta: f64,
) -> Result<RobustnessRecord> {
    RobustnessContext::new(p)?.evaluate(structure, delta)
}
