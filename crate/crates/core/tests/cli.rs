use std::path::Path;
use std::process::{Command, Output};

use qrobust::analysis::{RobustnessContext, RobustnessRecord};
use qrobust::sweep::{parse_csv_records, ConcordanceDocument, SweepDocument};

fn qrobust(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrobust"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn close(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).abs() <= tol,
        _ => false,
    }
}

fn assert_reproduces(row: &RobustnessRecord, fresh: &RobustnessRecord, tol: f64) {
    let d = row.delta;
    assert!((row.delta - fresh.delta).abs() <= tol);
    assert!(close(row.purity, fresh.purity, tol), "purity at {d}");
    assert!(close(row.concurrence_error, fresh.concurrence_error, tol), "E_C at {d}");
    assert!(close(row.fidelity_error, fresh.fidelity_error, tol), "E_F at {d}");
    assert!((row.stability_margin - fresh.stability_margin).abs() <= tol, "G at {d}");
    assert!(close(row.transfer_norm0, fresh.transfer_norm0, tol), "T at {d}");
    assert!(close(row.z1_distance, fresh.z1_distance, tol), "z1 at {d}");
    assert!(close(row.z1_bound, fresh.z1_bound, tol), "bound at {d}");
    assert_eq!(row.flags, fresh.flags);
}

#[test]
fn steady_state_of_bare_model() {
    let o = qrobust(&["steady-state"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("concurrence  0.995"));
}

#[test]
fn steady_state_json_with_reference() {
    let o = qrobust(&["steady-state", "--perturbation", "S4", "--delta", "0.05", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let f = v["steady_state"]["fidelity"].as_f64().unwrap();
    assert!(f > 0.0 && f < 1.0);
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 16);
}

#[test]
fn unitary_endpoint_is_a_numerical_failure() {
    let o = qrobust(&["steady-state", "--perturbation", "S5", "--delta=-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("no steady state"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "unitary.toml", "[model]\ns1 = 0.0\ns2 = 0.0\n");
    let o = qrobust(&["sweep", "--config", &cfg, "--perturbation", "S2"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn spectrum_lists_sixteen_eigenvalues() {
    let o = qrobust(&["spectrum"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("stability margin G = 3.5196"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", "[model]\nalpha1 = 1.0\nbogus = 2\n");
    let o = qrobust(&["sweep", "--config", &bad, "--perturbation", "S2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bogus"), "{}", stderr(&o));

    let syntax = write(dir.path(), "syntax.toml", "[model]\n\ndelta1 = = 3\n");
    let o = qrobust(&["sweep", "--config", &syntax, "--perturbation", "S2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let negative = write(dir.path(), "neg.toml", "[model]\ngamma1_r = -0.1\n");
    assert_eq!(qrobust(&["steady-state", "--config", &negative]).status.code(), Some(1));

    assert_eq!(qrobust(&["sweep", "--config", "/nonexistent.toml"]).status.code(), Some(1));
    assert_eq!(qrobust(&["sweep", "--perturbation", "S3"]).status.code(), Some(1));
    assert_eq!(qrobust(&["sweep", "--perturbation", "S2", "--grid", "1:0:5"]).status.code(), Some(1));
    assert_eq!(qrobust(&["sweep", "--perturbation", "S7", "--grid", "0:1:5:log"]).status.code(), Some(1));
    assert_eq!(qrobust(&["sweep"]).status.code(), Some(1));
    assert_eq!(qrobust(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn range_violation_exits_with_three_and_names_delta() {
    let o = qrobust(&["sweep", "--perturbation", "S2", "--grid=-0.3:0.2:6"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("-0.3"), "{}", stderr(&o));

    let o = qrobust(&["steady-state", "--perturbation", "S7", "--delta=-0.1"]);
    assert_eq!(o.status.code(), Some(3));

    let o = qrobust(&["sweep", "--perturbation", "S2", "--grid=-0.3:0.2:6", "--allow-range-override"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn csv_rows_reproduce_from_delta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s9.csv");
    let o = qrobust(&[
        "sweep", "--perturbation", "S9", "--grid", "0.001:1:13:log", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("delta,purity,E_C,E_F,G,T_norm0,z1,z1_bound,flags\n"));
    let rows = parse_csv_records(&text).unwrap();
    assert_eq!(rows.len(), 13);

    let p = qrobust::model::ModelParams::bare();
    let ctx = RobustnessContext::new(&p).unwrap();
    let s = qrobust::model::PerturbationStructure::catalog(qrobust::model::PerturbationId::S9, &p);
    for row in &rows {
        let fresh = ctx.evaluate(&s, row.delta).unwrap();
        assert_reproduces(row, &fresh, 1e-9);
    }
}

#[test]
fn json_is_self_describing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s5.toml",
        r#"
[model]
alpha1 = { re = 0.9, im = 0.1 }

[perturbation]
id = "S5"

[grid]
lo = -1.0
hi = 1.0
count = 11

[output]
format = "json"
"#,
    );
    let o = qrobust(&["sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: SweepDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.metadata.version, env!("CARGO_PKG_VERSION"));
    assert_eq!(doc.records.len(), 11);
    assert!(doc.records[0].flags.iter().any(|f| f.as_str() == "non-unique-steady-state"));

    let spec = &doc.metadata.config;
    let ctx = RobustnessContext::new(&spec.model).unwrap();
    for row in &doc.records {
        let fresh = ctx.evaluate(&spec.structure(), row.delta).unwrap();
        assert_reproduces(row, &fresh, 1e-9);
    }
}

#[test]
fn measure_subset_keeps_column_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cols.toml",
        "[perturbation]\nid = \"S4\"\n[output]\nmeasures = [\"z1\", \"E_C\", \"G\"]\n",
    );
    let o = qrobust(&["sweep", "--config", &cfg, "--grid=-0.1:0.1:5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("delta,E_C,G,z1,flags\n"));
}

#[test]
fn worker_count_does_not_change_bytes() {
    for format in ["csv", "json"] {
        let serial = qrobust(&["sweep", "--perturbation", "S7", "--format", format, "--workers", "1"]);
        let parallel = qrobust(&["sweep", "--perturbation", "S7", "--format", format, "--workers", "8"]);
        assert_eq!(serial.status.code(), Some(0));
        assert_eq!(serial.stdout, parallel.stdout, "{format}");
    }
    let serial = qrobust(&["concordance", "--workers", "1"]);
    let parallel = qrobust(&["concordance", "--workers", "6"]);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn concordance_outputs() {
    let o = qrobust(&["concordance"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "perturbation,samples,G~E_C,G~E_F,E_C~E_F,E_C~z1,E_F~z1");
    assert_eq!(lines.len(), 8);
    assert!(lines[7].starts_with("mean,"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", "[concordance]\nperturbations = [\"S9\"]\n[output]\nformat = \"json\"\n");
    let o = qrobust(&["concordance", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: ConcordanceDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.report.perturbations.len(), 1);
    assert_eq!(doc.metadata.config.len(), 1);
}
