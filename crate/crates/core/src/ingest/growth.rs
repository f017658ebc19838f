//! Compound-growth and doubling-time projections.

use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Unit};

/// `base * (1 + annual_rate)^t` for `t = 0..=years`, labelled from `start_year`.
pub fn cagr_project(base: f64, annual_rate: f64, start_year: i32, years: u32) -> Result<AnnualSeries> {
    if !(base > 0.0 && base.is_finite()) {
        return Err(Error::InvalidConfig(format!("base {base} must be positive")));
    }
    if !(annual_rate > -1.0 && annual_rate.is_finite()) {
        return Err(Error::InvalidConfig(format!("rate {annual_rate} must exceed -1")));
    }
    let factor = 1.0 + annual_rate;
    let points = (0..=years)
        .map(|t| (start_year + t as i32, base * factor.powi(t as i32)))
        .collect();
    AnnualSeries::new(Unit::TWh, points)
}

/// Final value of a compound-growth projection.
pub fn cagr_final(base: f64, annual_rate: f64, years: u32) -> Result<f64> {
    let s = cagr_project(base, annual_rate, 0, years)?;
    Ok(s.points()[s.len() - 1].1)
}

/// `base * 2^(horizon / doubling)`, both durations in months.
pub fn doubling_project(base: f64, doubling_months: f64, horizon_months: f64) -> Result<f64> {
    if !(doubling_months > 0.0 && doubling_months.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "doubling time {doubling_months} must be positive"
        )));
    }
    if !horizon_months.is_finite() || !base.is_finite() {
        return Err(Error::InvalidConfig("inputs must be finite".into()));
    }
    Ok(base * (horizon_months / doubling_months).exp2())
}
