use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::analysis::{RecordFlag, RobustnessRecord};
use crate::stats::{ConcordanceReport, CONCORDANCE_PAIRS};
use crate::{Error, Result};

use super::config::{Column, SweepSpec};

/// `printf("%.12e")` formatting: 13 significant digits and an exponent with
/// explicit sign and at least two digits. Missing values print as `nan`.
pub fn format_sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn column_value(record: &RobustnessRecord, column: Column) -> Option<f64> {
    match column {
        Column::Purity => record.purity,
        Column::ConcurrenceError => record.concurrence_error,
        Column::FidelityError => record.fidelity_error,
        Column::StabilityMargin => Some(record.stability_margin),
        Column::TransferNorm0 => record.transfer_norm0,
        Column::Z1Distance => record.z1_distance,
        Column::Z1Bound => record.z1_bound,
    }
}

/// Writes `delta, <columns in fixed order>, flags`. Flags are joined by `;`.
pub fn write_records_csv<W: Write>(mut w: W, records: &[RobustnessRecord], columns: &[Column]) -> Result<()> {
    let columns = ordered(columns);
    let mut header = vec!["delta"];
    header.extend(columns.iter().map(|c| c.label()));
    header.push("flags");
    writeln!(w, "{}", header.join(","))?;
    for r in records {
        let mut fields = vec![format_sci(r.delta)];
        fields.extend(
            columns
                .iter()
                .map(|c| format_sci(column_value(r, *c).unwrap_or(f64::NAN))),
        );
        fields.push(r.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(";"));
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

fn ordered(columns: &[Column]) -> Vec<Column> {
    super::config::ALL_COLUMNS
        .into_iter()
        .filter(|c| columns.contains(c))
        .collect()
}

/// Reads a table written by [`write_records_csv`]. Columns absent from the
/// table come back as `None` (`NaN` for the stability margin).
pub fn parse_csv_records(text: &str) -> Result<Vec<RobustnessRecord>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::Config("empty CSV".into()))?;
    let names: Vec<&str> = header.split(',').collect();
    if names.first() != Some(&"delta") || names.last() != Some(&"flags") {
        return Err(Error::Config("CSV header must start with delta and end with flags".into()));
    }
    let columns = names[1..names.len() - 1]
        .iter()
        .map(|n| Column::from_label(n).ok_or_else(|| Error::Config(format!("unknown CSV column '{n}'"))))
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(Error::Config(format!(
                "line {}: expected {} fields, found {}",
                lineno + 1,
                names.len(),
                fields.len()
            )));
        }
        let num = |i: usize| -> Result<Option<f64>> {
            let v: f64 = fields[i].parse().map_err(|_| {
                Error::Config(format!("line {}, column {}: bad number '{}'", lineno + 1, names[i], fields[i]))
            })?;
            Ok((!v.is_nan()).then_some(v))
        };
        let mut rec = RobustnessRecord {
            delta: num(0)?.unwrap_or(f64::NAN),
            purity: None,
            concurrence_error: None,
            fidelity_error: None,
            stability_margin: f64::NAN,
            transfer_norm0: None,
            z1_distance: None,
            z1_bound: None,
            pure_identity_residual: None,
            flags: Vec::new(),
        };
        for (k, col) in columns.iter().enumerate() {
            let v = num(k + 1)?;
            match col {
                Column::Purity => rec.purity = v,
                Column::ConcurrenceError => rec.concurrence_error = v,
                Column::FidelityError => rec.fidelity_error = v,
                Column::StabilityMargin => rec.stability_margin = v.unwrap_or(f64::NAN),
                Column::TransferNorm0 => rec.transfer_norm0 = v,
                Column::Z1Distance => rec.z1_distance = v,
                Column::Z1Bound => rec.z1_bound = v,
            }
        }
        let flags = fields[fields.len() - 1];
        if !flags.is_empty() {
            for f in flags.split(';') {
                rec.flags.push(
                    RecordFlag::parse(f)
                        .ok_or_else(|| Error::Config(format!("line {}: unknown flag '{f}'", lineno + 1)))?,
                );
            }
        }
        out.push(rec);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata<C> {
    pub tool: String,
    pub version: String,
    pub config: C,
}

impl<C> Metadata<C> {
    pub fn new(config: C) -> Self {
        Metadata {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
        }
    }
}

/// JSON form of a sweep: the resolved configuration plus every record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub metadata: Metadata<SweepSpec>,
    pub records: Vec<RobustnessRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcordanceDocument {
    pub metadata: Metadata<Vec<SweepSpec>>,
    pub report: ConcordanceReport,
}

fn tau_field(tau: Option<f64>) -> String {
    tau.map(format_sci).unwrap_or_else(|| "undefined".into())
}

/// One row per perturbation plus a final `mean` row.
pub fn write_concordance_csv<W: Write>(mut w: W, report: &ConcordanceReport) -> Result<()> {
    let mut header = vec!["perturbation".to_string(), "samples".to_string()];
    header.extend(CONCORDANCE_PAIRS.iter().map(|(a, b)| format!("{a}~{b}")));
    writeln!(w, "{}", header.join(","))?;
    for p in &report.perturbations {
        let mut row = vec![p.perturbation_id.to_string(), p.samples.to_string()];
        row.extend(p.pairs.iter().map(|t| tau_field(t.tau)));
        writeln!(w, "{}", row.join(","))?;
    }
    let mut row = vec!["mean".to_string(), String::new()];
    row.extend(report.mean_tau_per_pair.iter().map(|t| tau_field(t.tau)));
    writeln!(w, "{}", row.join(","))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_style() {
        assert_eq!(format_sci(0.0), "0.000000000000e+00");
        assert_eq!(format_sci(1.0), "1.000000000000e+00");
        assert_eq!(format_sci(-0.0049751243781), "-4.975124378100e-03");
        assert_eq!(format_sci(12345.678), "1.234567800000e+04");
        assert_eq!(format_sci(1e-123), "1.000000000000e-123");
        assert_eq!(format_sci(f64::NAN), "nan");
    }

    #[test]
    fn csv_roundtrip_keeps_missing_values_and_flags() {
        let records = vec![
            RobustnessRecord {
                delta: -1.0,
                purity: None,
                concurrence_error: None,
                fidelity_error: None,
                stability_margin: 0.0,
                transfer_norm0: None,
                z1_distance: None,
                z1_bound: None,
                pure_identity_residual: None,
                flags: vec![RecordFlag::NonUniqueSteadyState],
            },
            RobustnessRecord {
                delta: 0.5,
                purity: Some(0.9),
                concurrence_error: Some(0.1),
                fidelity_error: Some(0.05),
                stability_margin: 0.01,
                transfer_norm0: Some(2.0),
                z1_distance: Some(0.3),
                z1_bound: Some(0.4),
                pure_identity_residual: None,
                flags: vec![],
            },
        ];
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &records, &super::super::config::ALL_COLUMNS).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("delta,purity,E_C,E_F,G,T_norm0,z1,z1_bound,flags\n"));
        assert_eq!(parse_csv_records(&text).unwrap(), records);
    }

    #[test]
    fn column_subset_keeps_fixed_order() {
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &[], &[Column::Z1Bound, Column::Purity]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "delta,purity,z1_bound,flags\n");
    }
}
