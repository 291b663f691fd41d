//! Sweep configuration, orchestration and figure-ready output.
//!
//! A sweep evaluates one catalog perturbation over a grid of strengths and
//! produces one [`RobustnessRecord`](crate::analysis::RobustnessRecord) per
//! grid point. Grid points are independent, so they are evaluated on a
//! worker pool and reassembled in grid order.

mod config;
mod grid;
mod output;
mod run;

pub use config::{Column, Config, OutputFormat, OutputSpec, SweepSpec, ALL_COLUMNS};
pub use grid::{Grid, GridScale};
pub use output::{
    format_sci, parse_csv_records, write_concordance_csv, write_records_csv, ConcordanceDocument,
    Metadata, SweepDocument,
};
pub use run::{
    run_concordance, run_sweep, run_sweep_with_workers, spectrum_report, steady_state_report,
    SpectrumReport, SteadyStateReport,
};
