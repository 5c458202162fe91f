//! CSV and JSON emission. Empty CSV cells stand for absent values.

use crate::error::{Error, Result};
use crate::graph::Distance;

use super::{millis, BoundReport, TableRow};

fn cell(d: Option<Distance>) -> String {
    d.map(|d| d.to_string()).unwrap_or_default()
}

fn write_rows<const N: usize>(header: [&str; N], rows: impl Iterator<Item = [String; N]>) -> Result<String> {
    let out = |e: csv::Error| Error::Output(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(out)?;
    for row in rows {
        w.write_record(&row).map_err(out)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Output(e.to_string()))
}

pub fn reports_to_csv(reports: &[BoundReport]) -> Result<String> {
    write_rows(
        ["theorem_id", "instance", "lower", "exact", "upper", "verdict", "elapsed_ms"],
        reports.iter().map(|r| {
            [
                r.theorem_id.clone(),
                r.instance.clone(),
                cell(r.lower),
                cell(r.exact),
                cell(r.upper),
                r.verdict.to_string(),
                format!("{:.3}", millis(r.elapsed)),
            ]
        }),
    )
}

pub fn reports_to_json(reports: &[BoundReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::Output(e.to_string()))
}

pub fn table_to_csv(rows: &[TableRow]) -> Result<String> {
    write_rows(
        ["family", "k", "theorem_id", "lower", "computed", "upper", "verdict", "elapsed_ms"],
        rows.iter().map(|r| {
            [
                r.family.clone(),
                r.k.to_string(),
                r.theorem_id.unwrap_or_default().to_string(),
                cell(r.predicted_lower),
                cell(r.computed),
                cell(r.predicted_upper),
                r.verdict.to_string(),
                format!("{:.3}", millis(r.elapsed)),
            ]
        }),
    )
}

pub fn table_to_json(rows: &[TableRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::Output(e.to_string()))
}
