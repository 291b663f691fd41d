//! Sweep manifests.
//!
//! A manifest is a TOML file:
//!
//! ```toml
//! [model]                 # optional; omitted fields keep bare values
//! alpha2 = { re = 1.0, im = 0.0 }
//! delta2 = -0.1
//!
//! [perturbation]
//! id = "S7"
//! allow_range_override = false
//! range = [0.0, 1.0]      # optional replacement for the catalog range
//!
//! [grid]                  # optional; defaults depend on the perturbation
//! lo = 0.001
//! hi = 1.0
//! count = 61
//! scale = "log"
//!
//! [output]
//! path = "s7.csv"
//! format = "csv"
//! measures = ["purity", "E_C", "G"]
//!
//! [run]
//! workers = 4
//!
//! [concordance]           # used by the concordance command only
//! perturbations = ["S2", "S4", "S5", "S7", "S9", "S10"]
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{perturb, ModelParams, PerturbationId, PerturbationStructure};
use crate::{Error, Result};

use super::grid::Grid;

/// Data columns of a sweep table, in their fixed output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Column {
    #[serde(rename = "purity")]
    Purity,
    #[serde(rename = "E_C")]
    ConcurrenceError,
    #[serde(rename = "E_F")]
    FidelityError,
    #[serde(rename = "G")]
    StabilityMargin,
    #[serde(rename = "T_norm0")]
    TransferNorm0,
    #[serde(rename = "z1")]
    Z1Distance,
    #[serde(rename = "z1_bound")]
    Z1Bound,
}

pub const ALL_COLUMNS: [Column; 7] = [
    Column::Purity,
    Column::ConcurrenceError,
    Column::FidelityError,
    Column::StabilityMargin,
    Column::TransferNorm0,
    Column::Z1Distance,
    Column::Z1Bound,
];

impl Column {
    pub fn label(self) -> &'static str {
        match self {
            Column::Purity => "purity",
            Column::ConcurrenceError => "E_C",
            Column::FidelityError => "E_F",
            Column::StabilityMargin => "G",
            Column::TransferNorm0 => "T_norm0",
            Column::Z1Distance => "z1",
            Column::Z1Bound => "z1_bound",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        ALL_COLUMNS.into_iter().find(|c| c.label() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown format '{other}', expected csv or json"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    /// `None` writes to standard output.
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
    pub measures: Vec<Column>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            path: None,
            format: OutputFormat::Csv,
            measures: ALL_COLUMNS.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationSection {
    pub id: PerturbationId,
    #[serde(default)]
    pub allow_range_override: bool,
    pub range: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub measures: Option<Vec<Column>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcordanceSection {
    pub perturbations: Vec<PerturbationId>,
}

/// Parsed manifest, before command-line overrides are applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub model: ModelParams,
    pub perturbation: Option<PerturbationSection>,
    pub grid: Option<Grid>,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub run: RunSection,
    pub concordance: Option<ConcordanceSection>,
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.model.validate().map_err(|e| Error::Config(format!("[model]: {e}")))?;
        if let Some(grid) = &cfg.grid {
            grid.validate().map_err(|e| Error::Config(format!("[grid]: {e}")))?;
        }
        if cfg.run.workers == Some(0) {
            return Err(Error::Config("[run] workers must be >= 1".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Resolves the manifest into a sweep for `id`, or for the manifest's own
    /// `[perturbation]` when `id` is `None`.
    pub fn sweep_spec(&self, id: Option<PerturbationId>) -> Result<SweepSpec> {
        let section = self.perturbation.as_ref();
        let id = id
            .or(section.map(|s| s.id))
            .ok_or_else(|| Error::Config("no perturbation given (use [perturbation] id or --perturbation)".into()))?;
        // range and grid belong to the manifest's perturbation only
        let same = section.is_some_and(|s| s.id == id);
        let mut spec = SweepSpec::new(self.model, id);
        if same {
            let s = section.unwrap();
            spec.allow_range_override = s.allow_range_override;
            spec.range = s.range.map(|[lo, hi]| (lo, hi));
            if let Some(grid) = self.grid {
                spec.grid = grid;
            }
        } else if section.is_none() {
            if let Some(grid) = self.grid {
                spec.grid = grid;
            }
        }
        spec.output = OutputSpec {
            path: self.output.path.clone(),
            format: self.output.format.unwrap_or_default(),
            measures: self.output.measures.clone().unwrap_or_else(|| ALL_COLUMNS.to_vec()),
        };
        Ok(spec)
    }

    /// Sweeps for the concordance command: the listed perturbations (all six
    /// by default), each on its default grid.
    pub fn concordance_specs(&self) -> Result<Vec<SweepSpec>> {
        let ids = self
            .concordance
            .as_ref()
            .map(|c| c.perturbations.clone())
            .unwrap_or_else(|| PerturbationId::ALL.to_vec());
        ids.into_iter().map(|id| self.sweep_spec(Some(id))).collect()
    }
}

/// A fully resolved sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub model: ModelParams,
    pub perturbation: PerturbationId,
    pub grid: Grid,
    /// Replacement admissible range; the catalog range otherwise.
    pub range: Option<(f64, f64)>,
    pub allow_range_override: bool,
    pub output: OutputSpec,
}

impl SweepSpec {
    /// Default grid and output for a catalog perturbation.
    pub fn new(model: ModelParams, perturbation: PerturbationId) -> Self {
        SweepSpec {
            model,
            perturbation,
            grid: Self::default_grid(perturbation, &model),
            range: None,
            allow_range_override: false,
            output: OutputSpec::default(),
        }
    }

    /// 81 linear points over the catalog range for the Hamiltonian and
    /// coupling directions; 61 log points over [1e-3, 1] for decay and
    /// dephasing.
    pub fn default_grid(id: PerturbationId, model: &ModelParams) -> Grid {
        match id {
            PerturbationId::S7 | PerturbationId::S9 => Grid::log(1e-3, 1.0, 61),
            _ => {
                let (lo, hi) = PerturbationStructure::catalog(id, model).delta_range;
                Grid::linear(lo, hi, 81)
            }
        }
    }

    pub fn structure(&self) -> PerturbationStructure {
        let s = PerturbationStructure::catalog(self.perturbation, &self.model);
        let s = match self.range {
            Some((lo, hi)) => s.with_range(lo, hi),
            None => s,
        };
        if self.allow_range_override {
            s.unbounded()
        } else {
            s
        }
    }

    /// Checks the grid and that every grid point is admissible.
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.grid.validate()?;
        let s = self.structure();
        for delta in self.grid.points() {
            perturb(&self.model, &s, delta)?;
        }
        Ok(())
    }
}
