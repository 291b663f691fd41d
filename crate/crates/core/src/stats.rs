//! Rank concordance between robustness measures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::RobustnessRecord;
use crate::model::PerturbationId;
use crate::{Error, Result};

/// A measure whose spread (max − min) over a sweep is at or below this is
/// treated as constant, making every tau against it undefined.
pub const FLAT_TOL: f64 = 1e-6;

/// Tie-corrected Kendall rank correlation (tau-b).
///
/// Returns `Ok(None)` when either sequence is entirely tied, where tau-b
/// has a zero denominator.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    if let Some(i) = x.iter().chain(y).position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i % n));
    }

    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut ties_x, mut ties_y) = (0i64, 0i64);
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            if dx == 0.0 {
                ties_x += 1;
            }
            if dy == 0.0 {
                ties_y += 1;
            }
            let s = dx * dy;
            if s > 0.0 {
                concordant += 1;
            } else if s < 0.0 {
                discordant += 1;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as i64;
    let denom = ((pairs - ties_x) as f64) * ((pairs - ties_y) as f64);
    if denom == 0.0 {
        return Ok(None);
    }
    Ok(Some(((concordant - discordant) as f64 / denom.sqrt()).clamp(-1.0, 1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "G")]
    StabilityMargin,
    #[serde(rename = "E_C")]
    ConcurrenceError,
    #[serde(rename = "E_F")]
    FidelityError,
    #[serde(rename = "z1")]
    Z1Distance,
}

impl Measure {
    pub fn label(self) -> &'static str {
        match self {
            Measure::StabilityMargin => "G",
            Measure::ConcurrenceError => "E_C",
            Measure::FidelityError => "E_F",
            Measure::Z1Distance => "z1",
        }
    }

    pub fn extract(self, record: &RobustnessRecord) -> Option<f64> {
        match self {
            Measure::StabilityMargin => Some(record.stability_margin),
            Measure::ConcurrenceError => record.concurrence_error,
            Measure::FidelityError => record.fidelity_error,
            Measure::Z1Distance => record.z1_distance,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The five pairs analysed for every perturbation.
pub const CONCORDANCE_PAIRS: [(Measure, Measure); 5] = [
    (Measure::StabilityMargin, Measure::ConcurrenceError),
    (Measure::StabilityMargin, Measure::FidelityError),
    (Measure::ConcurrenceError, Measure::FidelityError),
    (Measure::ConcurrenceError, Measure::Z1Distance),
    (Measure::FidelityError, Measure::Z1Distance),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTau {
    pub a: Measure,
    pub b: Measure,
    /// `None` when undefined (a flat measure).
    pub tau: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationConcordance {
    pub perturbation_id: PerturbationId,
    /// Number of unflagged records used.
    pub samples: usize,
    pub pairs: Vec<PairTau>,
}

impl PerturbationConcordance {
    pub fn tau(&self, a: Measure, b: Measure) -> Option<f64> {
        self.pairs
            .iter()
            .find(|p| (p.a, p.b) == (a, b) || (p.a, p.b) == (b, a))
            .and_then(|p| p.tau)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcordanceReport {
    pub perturbations: Vec<PerturbationConcordance>,
    /// Mean over perturbations of each pair's tau, skipping undefined ones.
    pub mean_tau_per_pair: Vec<PairTau>,
}

impl ConcordanceReport {
    pub fn get(&self, id: PerturbationId) -> Option<&PerturbationConcordance> {
        self.perturbations.iter().find(|p| p.perturbation_id == id)
    }
}

fn column(records: &[&RobustnessRecord], m: Measure) -> Option<Vec<f64>> {
    records.iter().map(|r| m.extract(r)).collect()
}

fn is_flat(values: &[f64]) -> bool {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    hi - lo <= FLAT_TOL
}

fn pair_taus(id: PerturbationId, records: &[RobustnessRecord]) -> Result<PerturbationConcordance> {
    let valid: Vec<&RobustnessRecord> = records.iter().filter(|r| !r.is_flagged()).collect();
    if valid.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: valid.len(),
        });
    }
    let mut pairs = Vec::with_capacity(CONCORDANCE_PAIRS.len());
    for (a, b) in CONCORDANCE_PAIRS {
        let tau = match (column(&valid, a), column(&valid, b)) {
            (Some(xa), Some(xb)) if !is_flat(&xa) && !is_flat(&xb) => kendall_tau(&xa, &xb)?,
            _ => None,
        };
        pairs.push(PairTau { a, b, tau });
    }
    Ok(PerturbationConcordance {
        perturbation_id: id,
        samples: valid.len(),
        pairs,
    })
}

/// Five pairwise taus per perturbation plus the across-perturbation means.
/// Flagged records are excluded.
pub fn concordance_suite(sweeps: &[(PerturbationId, Vec<RobustnessRecord>)]) -> Result<ConcordanceReport> {
    if sweeps.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let perturbations = sweeps
        .iter()
        .map(|(id, recs)| pair_taus(*id, recs))
        .collect::<Result<Vec<_>>>()?;
    let mean_tau_per_pair = CONCORDANCE_PAIRS
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let defined: Vec<f64> = perturbations.iter().filter_map(|p| p.pairs[k].tau).collect();
            let tau = (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64);
            PairTau { a, b, tau }
        })
        .collect();
    Ok(ConcordanceReport {
        perturbations,
        mean_tau_per_pair,
    })
}
