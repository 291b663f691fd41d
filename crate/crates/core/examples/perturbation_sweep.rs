//! Sweep a manifest-described perturbation and print the table as CSV.
//!
//! cargo run --example perturbation_sweep [S2|S4|S5|S7|S9|S10]

use std::io;

use qrobust::model::PerturbationId;
use qrobust::sweep::{run_sweep, write_records_csv, Column, Config};

const MANIFEST: &str = r#"
[model]
delta1 = 0.1
delta2 = -0.1

[perturbation]
id = "S2"

[grid]
lo = -0.2
hi = 0.2
count = 9

[output]
measures = ["E_C", "G", "z1", "z1_bound"]
"#;

fn main() -> qrobust::Result<()> {
    let cfg = Config::from_toml_str(MANIFEST)?;
    let id = match std::env::args().nth(1) {
        Some(arg) => Some(arg.parse::<PerturbationId>()?),
        None => None,
    };
    let spec = cfg.sweep_spec(id)?;
    eprintln!("{} over {} points", spec.perturbation, spec.grid.count);
    let records = run_sweep(&spec)?;
    let columns: Vec<Column> = spec.output.measures.clone();
    write_records_csv(io::stdout().lock(), &records, &columns)?;
    Ok(())
}
