use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    concurrence, fidelity, margin_from_spectrum, spectrum, steady_state, RobustnessContext, RobustnessRecord,
};
use crate::bloch::DensityMatrix;
use crate::model::{build_bloch, ModelParams};
use crate::stats::{concordance_suite, ConcordanceReport};
use crate::{Error, Result};

use super::config::SweepSpec;
use super::output::format_sci;

/// Evaluates every grid point of `spec` on the global worker pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<RobustnessRecord>> {
    run_sweep_with_workers(spec, None)
}

/// Like [`run_sweep`], on a dedicated pool of `workers` threads when given.
/// Records come back in grid order regardless of scheduling.
pub fn run_sweep_with_workers(spec: &SweepSpec, workers: Option<usize>) -> Result<Vec<RobustnessRecord>> {
    spec.validate()?;
    let ctx = RobustnessContext::new(&spec.model)?;
    let structure = spec.structure();
    let points = spec.grid.points();
    let eval = || -> Result<Vec<RobustnessRecord>> {
        points
            .par_iter()
            .map(|&delta| ctx.evaluate(&structure, delta))
            .collect()
    };
    match workers {
        None => eval(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
            .install(eval),
    }
}

/// Runs each sweep and tabulates the pairwise concordances.
pub fn run_concordance(specs: &[SweepSpec], workers: Option<usize>) -> Result<ConcordanceReport> {
    if specs.is_empty() {
        return Err(Error::Config("concordance needs at least one sweep".into()));
    }
    let sweeps = specs
        .iter()
        .map(|spec| Ok((spec.perturbation, run_sweep_with_workers(spec, workers)?)))
        .collect::<Result<Vec<_>>>()?;
    concordance_suite(&sweeps)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSummary {
    /// Row-major real and imaginary parts of ρ_ss.
    pub rho_re: Vec<Vec<f64>>,
    pub rho_im: Vec<Vec<f64>>,
    pub bloch: Vec<f64>,
    pub purity: f64,
    pub concurrence: f64,
    /// Against the supplied reference, if any.
    pub fidelity: Option<f64>,
    pub residual: f64,
}

/// One-shot inspection of a model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyStateReport {
    pub model: ModelParams,
    pub steady_state: Option<StateSummary>,
    /// Why no steady state is reported.
    pub diagnostic: Option<String>,
    pub stability_margin: f64,
    /// Eigenvalues of A as `[re, im]`, rightmost first.
    pub spectrum: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub model: ModelParams,
    pub stability_margin: f64,
    pub eigenvalues: Vec<[f64; 2]>,
}

fn sorted_spectrum(model: &ModelParams) -> Result<(Vec<[f64; 2]>, f64)> {
    let gen = build_bloch(model)?;
    let mut ev = spectrum(gen.a())?;
    let margin = margin_from_spectrum(&ev);
    ev.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    Ok((ev.into_iter().map(|z| [z.re, z.im]).collect(), margin))
}

pub fn spectrum_report(model: &ModelParams) -> Result<SpectrumReport> {
    let (eigenvalues, stability_margin) = sorted_spectrum(model)?;
    Ok(SpectrumReport {
        model: *model,
        stability_margin,
        eigenvalues,
    })
}

/// Steady state, purity, concurrence, optional fidelity, stability margin
/// and spectrum. A model without a unique steady state yields a report with
/// a diagnostic rather than an error.
pub fn steady_state_report(model: &ModelParams, reference: Option<&DensityMatrix>) -> Result<SteadyStateReport> {
    let gen = build_bloch(model)?;
    let (spectrum, stability_margin) = sorted_spectrum(model)?;
    let (steady_state, diagnostic) = match steady_state(&gen) {
        Ok(ss) => {
            let m = ss.rho.matrix();
            let n = m.nrows();
            let rows = |f: fn(&num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
                (0..n).map(|i| (0..n).map(|j| f(&m[(i, j)])).collect()).collect()
            };
            let summary = StateSummary {
                rho_re: rows(|z| z.re),
                rho_im: rows(|z| z.im),
                bloch: ss.bloch().components().iter().copied().collect(),
                purity: ss.rho.purity(),
                concurrence: concurrence(&ss.rho)?,
                fidelity: reference.map(|r| fidelity(&ss.rho, r)).transpose()?,
                residual: ss.residual,
            };
            (Some(summary), None)
        }
        Err(e @ Error::NonUniqueSteadyState { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(SteadyStateReport {
        model: *model,
        steady_state,
        diagnostic,
        stability_margin,
        spectrum,
    })
}

impl fmt::Display for SteadyStateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.steady_state, &self.diagnostic) {
            (Some(ss), _) => {
                writeln!(f, "steady state (residual {:.3e})", ss.residual)?;
                for (re, im) in ss.rho_re.iter().zip(&ss.rho_im) {
                    let cells: Vec<String> = re
                        .iter()
                        .zip(im)
                        .map(|(a, b)| format!("{a:>+9.5}{b:>+9.5}i"))
                        .collect();
                    writeln!(f, "  [{}]", cells.join("  "))?;
                }
                writeln!(f, "purity       {:.12}", ss.purity)?;
                writeln!(f, "concurrence  {:.12}", ss.concurrence)?;
                if let Some(fid) = ss.fidelity {
                    writeln!(f, "fidelity     {fid:.12}")?;
                }
            }
            (None, Some(d)) => writeln!(f, "no steady state: {d}")?,
            (None, None) => writeln!(f, "no steady state")?,
        }
        writeln!(f, "stability margin G = {}", format_sci(self.stability_margin))?;
        writeln!(f, "spectrum of A:")?;
        for [re, im] in &self.spectrum {
            writeln!(f, "  {:>20} {:>20}i", format_sci(*re), format_sci(*im))?;
        }
        Ok(())
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stability margin G = {}", format_sci(self.stability_margin))?;
        for [re, im] in &self.eigenvalues {
            writeln!(f, "{:>20} {:>20}i", format_sci(*re), format_sci(*im))?;
        }
        Ok(())
    }
}
