//! Kendall tau agreement between the stability margin and the quantum
//! robustness measures across all six catalog perturbations.

use qrobust::model::{ModelParams, PerturbationId};
use qrobust::stats::CONCORDANCE_PAIRS;
use qrobust::sweep::{run_concordance, SweepSpec};

fn main() -> qrobust::Result<()> {
    let specs: Vec<SweepSpec> = PerturbationId::ALL
        .iter()
        .map(|&id| SweepSpec::new(ModelParams::bare(), id))
        .collect();
    let report = run_concordance(&specs, None)?;

    print!("{:>5}", "");
    for (a, b) in CONCORDANCE_PAIRS {
        print!("{:>10}", format!("{a}~{b}"));
    }
    println!();
    let show = |tau: Option<f64>| tau.map_or("-".to_string(), |t| format!("{t:+.3}"));
    for row in &report.perturbations {
        print!("{:>5}", row.perturbation_id.to_string());
        for pair in &row.pairs {
            print!("{:>10}", show(pair.tau));
        }
        println!();
    }
    print!("{:>5}", "mean");
    for pair in &report.mean_tau_per_pair {
        print!("{:>10}", show(pair.tau));
    }
    println!();
    Ok(())
}
