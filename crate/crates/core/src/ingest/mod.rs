//! Reading and writing the on-disk datasets, plus the small projection and equivalence
//! calculators that sit next to them.
//!
//! Formats (UTF-8, LF line endings, `.` as decimal point, no thousands separators):
//!
//! * series CSV, header `year,value`
//! * driver CSV, header `year,semis_twh,dc_twh,mix_factor,ai_share,co2_mt`
//! * scenario bundle JSON, see [`bundle`]
//!
//! Driver tables and series are also accepted as JSON arrays of objects with the same keys.

pub mod bundle;
pub mod bundled;
pub mod footprint;
pub mod growth;

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::drivers::{validate_driver_table, DriverRow, DriverTable};
use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Unit};

pub use bundle::{Provenance, ScenarioBundle};
pub use footprint::{equivalent_homes, inference_energy, InferenceEnergyTable, InferenceTask};
pub use growth::{cagr_project, doubling_project};

pub const SERIES_HEADER: [&str; 2] = ["year", "value"];
pub const DRIVER_HEADER: [&str; 6] = [
    "year",
    "semis_twh",
    "dc_twh",
    "mix_factor",
    "ai_share",
    "co2_mt",
];

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Parsed numeric records, each with its 1-based line number.
struct Records {
    rows: Vec<(u64, i32, Vec<f64>)>,
}

/// Parses a CSV whose first column is an integer year and the rest are numbers.
fn parse_numeric_csv(text: &str, header: &[&str]) -> Result<Records> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut iter = rdr.records();
    let head = match iter.next() {
        None => return Err(Error::schema(1, 1, "no data rows")),
        Some(r) => r.map_err(|e| csv_error(&e))?,
    };
    for (i, want) in header.iter().enumerate() {
        match head.get(i).map(str::trim) {
            Some(got) if got == *want => {}
            Some(got) => {
                return Err(Error::schema(
                    1,
                    i + 1,
                    format!("expected column `{want}`, found `{got}`"),
                ))
            }
            None => return Err(Error::schema(1, i + 1, format!("missing column `{want}`"))),
        }
    }
    if head.len() > header.len() {
        return Err(Error::schema(1, header.len() + 1, "unexpected extra column"));
    }

    let mut rows = Vec::new();
    for rec in iter {
        let rec = rec.map_err(|e| csv_error(&e))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec.get(0).is_some_and(|f| f.trim().is_empty()) {
            continue;
        }
        if rec.len() != header.len() {
            return Err(Error::schema(
                line,
                rec.len().min(header.len()),
                format!("expected {} fields, found {}", header.len(), rec.len()),
            ));
        }
        let year_field = rec.get(0).unwrap_or_default().trim();
        let year = year_field
            .parse::<i32>()
            .map_err(|_| Error::schema(line, 1, format!("integer year expected, found {year_field:?}")))?;
        let values = rec
            .iter()
            .enumerate()
            .skip(1)
            .map(|(c, f)| {
                let f = f.trim();
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::schema(line, c + 1, format!("number expected, found {f:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((line, year, values));
    }
    if rows.is_empty() {
        return Err(Error::schema(2, 1, "no data rows"));
    }
    Ok(Records { rows })
}

fn csv_error(e: &csv::Error) -> Error {
    let line = e.position().map_or(1, |p| p.line());
    Error::schema(line, 1, e.to_string())
}

pub fn parse_series_str(text: &str, unit: Unit) -> Result<AnnualSeries> {
    let recs = parse_numeric_csv(text, &SERIES_HEADER)?;
    let mut points = Vec::with_capacity(recs.rows.len());
    for (i, (line, year, values)) in recs.rows.iter().enumerate() {
        if i > 0 && *year <= recs.rows[i - 1].1 {
            return Err(Error::schema(*line, 1, "years must be strictly increasing"));
        }
        let v = values[0];
        if v < 0.0 || (unit == Unit::Fraction && v > 1.0) {
            return Err(Error::schema(*line, 2, format!("{v} is out of range for {unit}")));
        }
        points.push((*year, v));
    }
    AnnualSeries::new(unit, points)
}

/// Reads a series CSV (or JSON array of `{year, value}` when the extension is `.json`).
pub fn parse_series_csv(path: &Path, unit: Unit) -> Result<AnnualSeries> {
    let text = read_text(path)?;
    if is_json(path) {
        parse_series_json(&text, unit)
    } else {
        parse_series_str(&text, unit)
    }
}

pub fn parse_series_json(text: &str, unit: Unit) -> Result<AnnualSeries> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Point {
        year: i32,
        value: f64,
    }
    let pts: Vec<Point> = serde_json::from_str(text)?;
    if pts.is_empty() {
        return Err(Error::schema(1, 1, "no data rows"));
    }
    AnnualSeries::new(unit, pts.into_iter().map(|p| (p.year, p.value)).collect())
}

pub fn parse_driver_str(text: &str) -> Result<DriverTable> {
    let recs = parse_numeric_csv(text, &DRIVER_HEADER)?;
    let rows = recs
        .rows
        .into_iter()
        .map(|(_, year, v)| DriverRow {
            year,
            semis_twh: v[0],
            dc_twh: v[1],
            mix_factor: v[2],
            ai_share: v[3],
            co2_mt: v[4],
        })
        .collect();
    validate_driver_table(rows)
}

pub fn parse_driver_json(text: &str) -> Result<DriverTable> {
    let rows: Vec<DriverRow> = serde_json::from_str(text)?;
    if rows.is_empty() {
        return Err(Error::schema(1, 1, "no data rows"));
    }
    validate_driver_table(rows)
}

/// Reads a driver table from CSV, or JSON when the extension is `.json`.
pub fn parse_driver_csv(path: &Path) -> Result<DriverTable> {
    let text = read_text(path)?;
    if is_json(path) {
        parse_driver_json(&text)
    } else {
        parse_driver_str(&text)
    }
}

pub fn series_to_csv(series: &AnnualSeries) -> String {
    let mut out = SERIES_HEADER.join(",");
    out.push('\n');
    for (y, v) in series.points() {
        writeln!(out, "{y},{v}").unwrap();
    }
    out
}

pub fn driver_table_to_csv(table: &DriverTable) -> String {
    let mut out = DRIVER_HEADER.join(",");
    out.push('\n');
    for r in table.rows() {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.year, r.semis_twh, r.dc_twh, r.mix_factor, r.ai_share, r.co2_mt
        )
        .unwrap();
    }
    out
}

pub fn driver_table_to_json(table: &DriverTable) -> Result<String> {
    Ok(serde_json::to_string_pretty(table)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_parses_to_sixteen_rows() {
        let t = parse_driver_str(bundled::TABLE2_CSV).unwrap();
        assert_eq!(t.len(), 16);
        assert_eq!(t.first_year(), 2020);
        assert_eq!(t.last_year(), 2035);
        let r = t.row(2025).unwrap();
        assert_eq!((r.dc_twh, r.ai_share, r.co2_mt), (482.5, 0.2, 20.08));
    }

    #[test]
    fn header_typo() {
        let err = parse_series_str("yeer,value\n2020,1\n", Unit::TWh).unwrap_err();
        assert!(matches!(err, Error::Schema { line: 1, column: 1, .. }), "{err}");
        let err = parse_driver_str("year,semis_twh,dc,mix_factor,ai_share,co2_mt\n").unwrap_err();
        assert!(matches!(err, Error::Schema { line: 1, column: 3, .. }), "{err}");
    }

    #[test]
    fn empty_file() {
        let err = parse_series_str("", Unit::TWh).unwrap_err();
        assert!(err.to_string().contains("no data rows"));
        let err = parse_driver_str("year,semis_twh,dc_twh,mix_factor,ai_share,co2_mt\n").unwrap_err();
        assert!(matches!(err, Error::Schema { line: 2, .. }));
        assert!(err.to_string().contains("no data rows"));
    }

    #[test]
    fn bad_cells_report_line_and_column() {
        let text = "year,value\n2020,1\n2021,abc\n";
        assert!(matches!(
            parse_series_str(text, Unit::TWh),
            Err(Error::Schema { line: 3, column: 2, .. })
        ));
        let text = "year,value\n2020,1\n20x1,2\n";
        assert!(matches!(
            parse_series_str(text, Unit::TWh),
            Err(Error::Schema { line: 3, column: 1, .. })
        ));
        let text = "year,value\n2020,1,9\n";
        assert!(matches!(
            parse_series_str(text, Unit::TWh),
            Err(Error::Schema { line: 2, .. })
        ));
        let text = "year,value\n2020,1\n2020,2\n";
        assert!(matches!(
            parse_series_str(text, Unit::TWh),
            Err(Error::Schema { line: 3, column: 1, .. })
        ));
        let text = "year,value\n2020,1.5\n";
        assert!(matches!(
            parse_series_str(text, Unit::Fraction),
            Err(Error::Schema { line: 2, column: 2, .. })
        ));
    }

    #[test]
    fn driver_violations_surface_after_parse() {
        let text = "year,semis_twh,dc_twh,mix_factor,ai_share,co2_mt\n2020,1,1,1.3,0.1,1\n2022,1,1,0.5,0.1,1\n";
        let Err(Error::DriverTable(v)) = parse_driver_str(text) else {
            panic!("expected violations")
        };
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn json_alternatives() {
        let t = parse_driver_str(bundled::TABLE2_CSV).unwrap();
        let json = driver_table_to_json(&t).unwrap();
        assert_eq!(parse_driver_json(&json).unwrap(), t);
        let s = parse_series_json(r#"[{"year":2020,"value":3.5}]"#, Unit::TWh).unwrap();
        assert_eq!(s.points(), &[(2020, 3.5)]);
        assert!(parse_series_json("[]", Unit::TWh).is_err());
    }

    #[test]
    fn series_csv_round_trip() {
        let text = "year,value\n2023,152\n2024,174.8\n";
        let s = parse_series_str(text, Unit::TWh).unwrap();
        assert_eq!(series_to_csv(&s), text);
    }

    #[test]
    fn reads_from_disk() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        std::fs::write(&p, bundled::TABLE2_CSV).unwrap();
        assert_eq!(parse_driver_csv(&p).unwrap().len(), 16);
        let missing = dir.path().join("nope.csv");
        assert!(matches!(parse_driver_csv(&missing), Err(Error::Io { .. })));
    }
}
