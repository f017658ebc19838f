//! Text exports of ensembles and bands.
//!
//! Bands CSV: `year,mean,p5,p50,p95` (one `p<q>` column per requested percentile).
//! Ensemble CSV: `realization,<year>,<year>,...` with one row per realization.
//! Numbers use the shortest representation that round-trips, so output is byte-stable.

use std::fmt::Write as _;

use crate::config::SimulationConfig;
use crate::error::{Error, Result};

use super::{EnsembleResult, PercentileBands};

/// Column label for a percentile, e.g. `p5`, `p50`, `p2.5`.
pub fn percentile_label(p: f64) -> String {
    format!("p{p}")
}

pub fn bands_to_csv(bands: &PercentileBands) -> String {
    let mut out = String::from("year,mean");
    for &p in &bands.percentiles {
        out.push(',');
        out.push_str(&percentile_label(p));
    }
    out.push('\n');
    for row in &bands.rows {
        write!(out, "{},{}", row.year, row.mean).unwrap();
        for v in &row.values {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn bands_to_json(bands: &PercentileBands) -> Result<String> {
    Ok(serde_json::to_string_pretty(bands)? + "\n")
}

pub fn ensemble_to_csv(result: &EnsembleResult) -> String {
    let mut out = String::from("realization");
    for y in &result.years {
        write!(out, ",{y}").unwrap();
    }
    out.push('\n');
    for (i, row) in result.rows().enumerate() {
        write!(out, "{i}").unwrap();
        for v in row {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Reads an ensemble CSV back into a result. Clamp counters and seed are not recoverable.
pub fn ensemble_from_csv(text: &str) -> Result<EnsembleResult> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = rdr.records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| csv_error(&e))?,
        None => return Err(Error::schema(1, 1, "no header")),
    };
    if header.get(0) != Some("realization") {
        return Err(Error::schema(1, 1, "expected first column `realization`"));
    }
    let years = header
        .iter()
        .enumerate()
        .skip(1)
        .map(|(c, f)| {
            f.trim()
                .parse::<i32>()
                .map_err(|_| Error::schema(1, c + 1, format!("year expected, found {f:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| csv_error(&e))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != years.len() + 1 {
            return Err(Error::schema(
                line,
                rec.len().min(years.len() + 1),
                format!("expected {} fields, found {}", years.len() + 1, rec.len()),
            ));
        }
        let row = rec
            .iter()
            .enumerate()
            .skip(1)
            .map(|(c, f)| {
                f.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite() && *v >= 0.0)
                    .ok_or_else(|| {
                        Error::schema(line, c + 1, format!("non-negative number expected, found {f:?}"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::schema(2, 1, "no data rows"));
    }
    EnsembleResult::from_rows(years, rows, SimulationConfig::default())
}

fn csv_error(e: &csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::schema(line, 1, e.to_string())
}
