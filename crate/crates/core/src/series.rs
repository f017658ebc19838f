//! Annual time series with a declared physical unit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit attached to every [`AnnualSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    TWh,
    MtCO2,
    /// Dimensionless share in `[0, 1]`.
    Fraction,
    Wh,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Unit::TWh => "TWh",
            Unit::MtCO2 => "MtCO2",
            Unit::Fraction => "Fraction",
            Unit::Wh => "Wh",
        };
        f.write_str(s)
    }
}

/// Ordered `year -> value` points in one unit.
///
/// Years are strictly increasing and every value is finite. Physical quantities are
/// non-negative and fractions lie in `[0, 1]`. The constructor enforces all of this, so a
/// value of this type is always valid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnualSeries {
    unit: Unit,
    points: Vec<(i32, f64)>,
}

impl AnnualSeries {
    pub fn new(unit: Unit, points: Vec<(i32, f64)>) -> Result<Self> {
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidSeries(format!(
                    "years not strictly increasing: {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(year, value) in &points {
            if !value.is_finite() {
                return Err(Error::InvalidSeries(format!("non-finite value in {year}")));
            }
            if value < 0.0 {
                return Err(Error::InvalidSeries(format!(
                    "negative {unit} value {value} in {year}"
                )));
            }
            if unit == Unit::Fraction && value > 1.0 {
                return Err(Error::InvalidSeries(format!(
                    "fraction {value} in {year} exceeds 1"
                )));
            }
        }
        Ok(Self { unit, points })
    }

    /// Builds a series over consecutive years starting at `first_year`.
    pub fn from_values(unit: Unit, first_year: i32, values: &[f64]) -> Result<Self> {
        let points = values
            .iter()
            .zip(first_year..)
            .map(|(&v, y)| (y, v))
            .collect();
        Self::new(unit, points)
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn points(&self) -> &[(i32, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    pub fn first_year(&self) -> Option<i32> {
        self.points.first().map(|p| p.0)
    }

    pub fn last_year(&self) -> Option<i32> {
        self.points.last().map(|p| p.0)
    }

    pub fn get(&self, year: i32) -> Option<f64> {
        self.points
            .binary_search_by_key(&year, |p| p.0)
            .ok()
            .map(|i| self.points[i].1)
    }

    pub fn is_contiguous(&self) -> bool {
        self.points.windows(2).all(|w| w[1].0 == w[0].0 + 1)
    }

    /// Fails unless the years form an unbroken run.
    pub fn ensure_contiguous(&self) -> Result<()> {
        match self.points.windows(2).find(|w| w[1].0 != w[0].0 + 1) {
            Some(w) => Err(Error::InvalidSeries(format!(
                "gap between {} and {}",
                w[0].0, w[1].0
            ))),
            None => Ok(()),
        }
    }
}

impl<'de> Deserialize<'de> for AnnualSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            unit: Unit,
            points: Vec<(i32, f64)>,
        }
        let raw = Raw::deserialize(d)?;
        AnnualSeries::new(raw.unit, raw.points).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unordered_years() {
        let err = AnnualSeries::new(Unit::TWh, vec![(2021, 1.0), (2020, 2.0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidSeries(_)));
        assert!(AnnualSeries::new(Unit::TWh, vec![(2020, 1.0), (2020, 2.0)]).is_err());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(AnnualSeries::new(Unit::MtCO2, vec![(2020, -1.0)]).is_err());
        assert!(AnnualSeries::new(Unit::Wh, vec![(2020, f64::NAN)]).is_err());
        assert!(AnnualSeries::new(Unit::Fraction, vec![(2020, 1.01)]).is_err());
        assert!(AnnualSeries::new(Unit::Fraction, vec![(2020, 1.0), (2021, 0.0)]).is_ok());
        assert!(AnnualSeries::new(Unit::TWh, vec![(2020, 5000.0)]).is_ok());
    }

    #[test]
    fn lookup_and_contiguity() {
        let s = AnnualSeries::from_values(Unit::TWh, 2020, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.get(2021), Some(2.0));
        assert_eq!(s.get(2019), None);
        assert!(s.is_contiguous());
        let gap = AnnualSeries::new(Unit::TWh, vec![(2020, 1.0), (2022, 1.0)]).unwrap();
        assert!(!gap.is_contiguous());
        assert!(gap.ensure_contiguous().is_err());
    }

    #[test]
    fn deserialize_validates() {
        let ok: AnnualSeries =
            serde_json::from_str(r#"{"unit":"TWh","points":[[2020,1.5],[2021,2.0]]}"#).unwrap();
        assert_eq!(ok.len(), 2);
        let bad = serde_json::from_str::<AnnualSeries>(
            r#"{"unit":"Fraction","points":[[2020,1.5]]}"#,
        );
        assert!(bad.is_err());
    }
}
