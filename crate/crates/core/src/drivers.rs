//! Per-year emission drivers and the observed CO2 column.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, TableViolation};
use crate::series::{AnnualSeries, Unit};

/// One of the four perturbable driver columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Driver {
    SemisTwh,
    DcTwh,
    MixFactor,
    AiShare,
}

impl Driver {
    /// Fixed column order, also the order in which random draws are consumed.
    pub const ALL: [Driver; 4] = [
        Driver::SemisTwh,
        Driver::DcTwh,
        Driver::MixFactor,
        Driver::AiShare,
    ];

    pub fn column_name(self) -> &'static str {
        match self {
            Driver::SemisTwh => "semis_twh",
            Driver::DcTwh => "dc_twh",
            Driver::MixFactor => "mix_factor",
            Driver::AiShare => "ai_share",
        }
    }

    pub fn unit(self) -> Unit {
        match self {
            Driver::SemisTwh | Driver::DcTwh => Unit::TWh,
            Driver::MixFactor | Driver::AiShare => Unit::Fraction,
        }
    }

    pub fn is_fraction(self) -> bool {
        self.unit() == Unit::Fraction
    }
}

impl fmt::Display for Driver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column_name())
    }
}

/// One year's driver values, without the observed emissions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriverTuple {
    pub semis_twh: f64,
    pub dc_twh: f64,
    pub mix_factor: f64,
    pub ai_share: f64,
}

impl DriverTuple {
    pub fn get(&self, d: Driver) -> f64 {
        match d {
            Driver::SemisTwh => self.semis_twh,
            Driver::DcTwh => self.dc_twh,
            Driver::MixFactor => self.mix_factor,
            Driver::AiShare => self.ai_share,
        }
    }

    pub fn set(&mut self, d: Driver, value: f64) {
        match d {
            Driver::SemisTwh => self.semis_twh = value,
            Driver::DcTwh => self.dc_twh = value,
            Driver::MixFactor => self.mix_factor = value,
            Driver::AiShare => self.ai_share = value,
        }
    }
}

/// A row of the driver table as it appears on disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriverRow {
    pub year: i32,
    pub semis_twh: f64,
    pub dc_twh: f64,
    pub mix_factor: f64,
    pub ai_share: f64,
    pub co2_mt: f64,
}

impl DriverRow {
    pub fn drivers(&self) -> DriverTuple {
        DriverTuple {
            semis_twh: self.semis_twh,
            dc_twh: self.dc_twh,
            mix_factor: self.mix_factor,
            ai_share: self.ai_share,
        }
    }
}

/// A validated, contiguous, one-row-per-year driver table.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DriverTable {
    rows: Vec<DriverRow>,
}

/// Checks every row and returns the table, or a report listing every violation.
pub fn validate_driver_table(rows: Vec<DriverRow>) -> Result<DriverTable> {
    if rows.is_empty() {
        return Err(Error::EmptyInput("driver table has no rows"));
    }
    let mut violations = Vec::new();
    for w in rows.windows(2) {
        if w[1].year != w[0].year + 1 {
            violations.push(TableViolation::GapInYears {
                after: w[0].year,
                next: w[1].year,
            });
        }
    }
    for r in &rows {
        for (name, value) in [
            ("semis_twh", r.semis_twh),
            ("dc_twh", r.dc_twh),
            ("co2_mt", r.co2_mt),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                violations.push(TableViolation::NonPositiveValue {
                    year: r.year,
                    column: name,
                    value,
                });
            }
        }
        if !(r.mix_factor > 0.0 && r.mix_factor <= 1.0) {
            violations.push(TableViolation::FractionOutOfRange {
                year: r.year,
                column: Driver::MixFactor,
                value: r.mix_factor,
            });
        }
        if !(0.0..=1.0).contains(&r.ai_share) {
            violations.push(TableViolation::FractionOutOfRange {
                year: r.year,
                column: Driver::AiShare,
                value: r.ai_share,
            });
        }
    }
    if violations.is_empty() {
        Ok(DriverTable { rows })
    } else {
        Err(Error::DriverTable(violations))
    }
}

impl DriverTable {
    pub fn new(rows: Vec<DriverRow>) -> Result<Self> {
        validate_driver_table(rows)
    }

    pub fn rows(&self) -> &[DriverRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn first_year(&self) -> i32 {
        self.rows[0].year
    }

    pub fn last_year(&self) -> i32 {
        self.rows[self.rows.len() - 1].year
    }

    pub fn years(&self) -> Vec<i32> {
        self.rows.iter().map(|r| r.year).collect()
    }

    pub fn row(&self, year: i32) -> Option<&DriverRow> {
        let idx = year.checked_sub(self.first_year())?;
        self.rows.get(usize::try_from(idx).ok()?)
    }

    pub fn column(&self, d: Driver) -> AnnualSeries {
        let points = self.rows.iter().map(|r| (r.year, r.drivers().get(d))).collect();
        AnnualSeries::new(d.unit(), points).expect("validated table columns are valid series")
    }

    pub fn co2(&self) -> AnnualSeries {
        let points = self.rows.iter().map(|r| (r.year, r.co2_mt)).collect();
        AnnualSeries::new(Unit::MtCO2, points).expect("validated co2 column is a valid series")
    }
}

impl<'de> Deserialize<'de> for DriverTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<DriverRow>::deserialize(d)?;
        validate_driver_table(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(year: i32) -> DriverRow {
        DriverRow {
            year,
            semis_twh: 100.0,
            dc_twh: 300.0,
            mix_factor: 0.5,
            ai_share: 0.1,
            co2_mt: 10.0,
        }
    }

    #[test]
    fn accepts_clean_rows() {
        let t = validate_driver_table(vec![row(2020), row(2021), row(2022)]).unwrap();
        assert_eq!(t.years(), vec![2020, 2021, 2022]);
        assert_eq!(t.row(2021).unwrap().year, 2021);
        assert!(t.row(2019).is_none());
        assert!(t.row(2023).is_none());
    }

    #[test]
    fn gap_in_years() {
        let err = validate_driver_table(vec![row(2020), row(2022)]).unwrap_err();
        match err {
            Error::DriverTable(v) => {
                assert_eq!(v, vec![TableViolation::GapInYears { after: 2020, next: 2022 }])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fraction_out_of_range() {
        let mut r = row(2020);
        r.mix_factor = 1.3;
        let err = validate_driver_table(vec![r]).unwrap_err();
        assert!(matches!(
            err,
            Error::DriverTable(ref v) if matches!(v[0], TableViolation::FractionOutOfRange { column: Driver::MixFactor, .. })
        ));
    }

    #[test]
    fn zero_mix_is_rejected_but_zero_share_is_allowed() {
        let mut r = row(2020);
        r.ai_share = 0.0;
        assert!(validate_driver_table(vec![r]).is_ok());
        r.mix_factor = 0.0;
        assert!(validate_driver_table(vec![r]).is_err());
    }

    #[test]
    fn reports_every_violation() {
        let mut a = row(2020);
        a.dc_twh = 0.0;
        let mut b = row(2021);
        b.co2_mt = -1.0;
        b.ai_share = 1.5;
        let c = row(2023);
        let err = validate_driver_table(vec![a, b, c]).unwrap_err();
        let Error::DriverTable(v) = err else {
            panic!("expected table report")
        };
        assert_eq!(v.len(), 4);
        let msg = Error::DriverTable(v).to_string();
        assert!(msg.contains("dc_twh=0 in 2020"));
        assert!(msg.contains("GapInYears"));
    }

    #[test]
    fn empty_table() {
        assert!(matches!(validate_driver_table(vec![]), Err(Error::EmptyInput(_))));
    }
}
