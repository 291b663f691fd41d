use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qrobust::model::{perturb, ModelParams, PerturbationId, PerturbationStructure};
use qrobust::sweep::{
    run_concordance, run_sweep_with_workers, spectrum_report, steady_state_report, write_concordance_csv,
    write_records_csv, Config, ConcordanceDocument, Grid, Metadata, OutputFormat, SweepDocument,
};
use qrobust::{analysis, Result};

/// Robustness sweeps for the driven two-qubit dissipative model.
#[derive(Parser)]
#[command(name = "qrobust", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one structured perturbation and emit a record per grid point.
    Sweep(SweepArgs),
    /// Sweep several perturbations and emit Kendall tau concordances.
    Concordance(CommonArgs),
    /// Steady state, purity, concurrence, fidelity and spectrum of one model.
    SteadyState(PointArgs),
    /// Spectrum of the Bloch generator and its stability margin.
    Spectrum(PointArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// TOML manifest; the bare model when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Worker threads (default: machine parallelism).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    perturbation: Option<PerturbationId>,
    /// lo:hi:count or lo:hi:count:log
    #[arg(long)]
    grid: Option<Grid>,
    /// Accept δ outside the catalog range.
    #[arg(long)]
    allow_range_override: bool,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Apply this perturbation before analysing; fidelity is then reported
    /// against the unperturbed steady state.
    #[arg(long, requires = "delta")]
    perturbation: Option<PerturbationId>,
    #[arg(long, requires = "perturbation", allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long)]
    allow_range_override: bool,
}

fn load(path: Option<&Path>) -> Result<Config> {
    match path {
        Some(p) => Config::load(p),
        None => Config::from_toml_str(""),
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sweep(args: SweepArgs) -> Result<()> {
    let cfg = load(args.common.config.as_deref())?;
    let mut spec = cfg.sweep_spec(args.perturbation)?;
    if let Some(grid) = args.grid {
        spec.grid = grid;
    }
    spec.allow_range_override |= args.allow_range_override;
    if let Some(out) = args.common.out {
        spec.output.path = Some(out);
    }
    if let Some(format) = args.common.format {
        spec.output.format = format;
    }
    let workers = args.common.workers.or(cfg.run.workers);
    let records = run_sweep_with_workers(&spec, workers)?;
    let mut w = sink(spec.output.path.as_deref())?;
    match spec.output.format {
        OutputFormat::Csv => write_records_csv(&mut w, &records, &spec.output.measures)?,
        OutputFormat::Json => {
            let doc = SweepDocument {
                metadata: Metadata::new(spec),
                records,
            };
            serde_json::to_writer_pretty(&mut w, &doc).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn concordance(args: CommonArgs) -> Result<()> {
    let cfg = load(args.config.as_deref())?;
    let specs = cfg.concordance_specs()?;
    let report = run_concordance(&specs, args.workers.or(cfg.run.workers))?;
    let path = args.out.or(cfg.output.path.clone());
    let mut w = sink(path.as_deref())?;
    match args.format.or(cfg.output.format).unwrap_or_default() {
        OutputFormat::Csv => write_concordance_csv(&mut w, &report)?,
        OutputFormat::Json => {
            let doc = ConcordanceDocument {
                metadata: Metadata::new(specs),
                report,
            };
            serde_json::to_writer_pretty(&mut w, &doc).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// The model to inspect and, when perturbed, the unperturbed model.
fn point_model(args: &PointArgs, cfg: &Config) -> Result<(ModelParams, Option<ModelParams>)> {
    match (args.perturbation, args.delta) {
        (Some(id), Some(delta)) => {
            let mut s = PerturbationStructure::catalog(id, &cfg.model);
            if args.allow_range_override {
                s = s.unbounded();
            }
            Ok((perturb(&cfg.model, &s, delta)?, Some(cfg.model)))
        }
        _ => Ok((cfg.model, None)),
    }
}

fn point(args: PointArgs, spectrum_only: bool) -> Result<()> {
    let cfg = load(args.common.config.as_deref())?;
    let (model, base) = point_model(&args, &cfg)?;
    // text unless JSON is asked for explicitly
    let json = args.common.format == Some(OutputFormat::Json);
    let mut w = sink(args.common.out.as_deref())?;
    if spectrum_only {
        let report = spectrum_report(&model)?;
        if json {
            serde_json::to_writer_pretty(&mut w, &report).map_err(io::Error::from)?;
            writeln!(w)?;
        } else {
            write!(w, "{report}")?;
        }
    } else {
        let reference = match base {
            Some(b) => Some(analysis::steady_state(&qrobust::model::build_bloch(&b)?)?.rho),
            None => None,
        };
        let report = steady_state_report(&model, reference.as_ref())?;
        if json {
            serde_json::to_writer_pretty(&mut w, &report).map_err(io::Error::from)?;
            writeln!(w)?;
        } else {
            write!(w, "{report}")?;
        }
        w.flush()?;
        // the report is still written, but scripts should see the failure
        if report.steady_state.is_none() {
            return analysis::steady_state(&qrobust::model::build_bloch(&model)?).map(|_| ());
        }
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Concordance(a) => concordance(a),
        Command::SteadyState(a) => point(a, false),
        Command::Spectrum(a) => point(a, true),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qrobust: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
