//! Emission models mapping a year's drivers to CO2 in Mt/year.
//!
//! Two forms are fitted to the driver table:
//!
//! * [`ImpliedIntensity`] solves, for every year, the carbon intensity `kappa(t)` of
//!   fossil-attributed AI electricity so that `kappa(t) * dc_twh * ai_share * mix_factor`
//!   reproduces the observed CO2 exactly. The semiconductor column plays no part in it.
//! * [`LinearRegression`] is ordinary least squares of CO2 on
//!   `[1, semis_twh, dc_twh, mix_factor, ai_share]`.
//!
//! Both are immutable after fitting and `predict` is a pure function.

pub mod ols;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::ModelKind;
use crate::drivers::{DriverTable, DriverTuple};
use crate::error::{Error, Result};

/// Minimum rows for the regression: five coefficients plus one degree of freedom.
pub const MIN_REGRESSION_ROWS: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmissionModel {
    ImpliedIntensity(ImpliedIntensity),
    LinearRegression(LinearRegression),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpliedIntensity {
    /// Mt CO2 per fossil-attributed TWh, one entry per contiguous fitted year.
    pub kappa: Vec<(i32, f64)>,
    pub diagnostics: IntensityDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityDiagnostics {
    pub kappa_min: f64,
    pub kappa_max: f64,
    /// Driver columns present in the table but not used by the product form.
    pub unused_drivers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearRegression {
    /// Intercept followed by the weights on semis_twh, dc_twh, mix_factor, ai_share.
    pub coefficients: [f64; 5],
    pub diagnostics: RegressionDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionDiagnostics {
    pub residual_sum_of_squares: f64,
    pub max_abs_residual: f64,
    pub residuals: Vec<(i32, f64)>,
}

/// Output of [`EmissionModel::predict`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub co2_mt: f64,
    /// True when a negative raw value was clamped to zero.
    pub clamped: bool,
}

pub fn fit_implied_intensity(table: &DriverTable) -> Result<EmissionModel> {
    let degenerate: Vec<i32> = table
        .rows()
        .iter()
        .filter(|r| r.dc_twh * r.ai_share * r.mix_factor <= 0.0)
        .map(|r| r.year)
        .collect();
    if !degenerate.is_empty() {
        return Err(Error::DegenerateRow(degenerate));
    }
    let kappa: Vec<(i32, f64)> = table
        .rows()
        .iter()
        .map(|r| (r.year, r.co2_mt / fossil_ai_twh(&r.drivers())))
        .collect();
    let kappa_min = kappa.iter().map(|k| k.1).fold(f64::INFINITY, f64::min);
    let kappa_max = kappa.iter().map(|k| k.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(EmissionModel::ImpliedIntensity(ImpliedIntensity {
        kappa,
        diagnostics: IntensityDiagnostics {
            kappa_min,
            kappa_max,
            unused_drivers: vec!["semis_twh".to_string()],
        },
    }))
}

pub fn fit_linear_regression(table: &DriverTable) -> Result<EmissionModel> {
    if table.len() < MIN_REGRESSION_ROWS {
        return Err(Error::TooFewRows {
            needed: MIN_REGRESSION_ROWS,
            got: table.len(),
        });
    }
    let rows = table.rows();
    let columns = vec![
        vec![1.0; rows.len()],
        rows.iter().map(|r| r.semis_twh).collect(),
        rows.iter().map(|r| r.dc_twh).collect(),
        rows.iter().map(|r| r.mix_factor).collect(),
        rows.iter().map(|r| r.ai_share).collect(),
    ];
    let y: Vec<f64> = rows.iter().map(|r| r.co2_mt).collect();
    let fit = ols::least_squares(&columns, &y)?;
    let coefficients: [f64; 5] = fit
        .coefficients
        .try_into()
        .expect("five design columns give five coefficients");
    let max_abs_residual = fit.residuals.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    Ok(EmissionModel::LinearRegression(LinearRegression {
        coefficients,
        diagnostics: RegressionDiagnostics {
            residual_sum_of_squares: fit.rss,
            max_abs_residual,
            residuals: rows.iter().map(|r| r.year).zip(fit.residuals).collect(),
        },
    }))
}

pub fn fit(table: &DriverTable, kind: ModelKind) -> Result<EmissionModel> {
    match kind {
        ModelKind::ImpliedIntensity => fit_implied_intensity(table),
        ModelKind::LinearRegression => fit_linear_regression(table),
    }
}

fn fossil_ai_twh(d: &DriverTuple) -> f64 {
    d.dc_twh * d.ai_share * d.mix_factor
}

impl ImpliedIntensity {
    pub fn kappa_at(&self, year: i32) -> Result<f64> {
        let first = self.kappa[0].0;
        let last = self.kappa[self.kappa.len() - 1].0;
        if year < first || year > last {
            return Err(Error::YearOutsideFit { year, first, last });
        }
        Ok(self.kappa[(year - first) as usize].1)
    }
}

impl EmissionModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            EmissionModel::ImpliedIntensity(_) => ModelKind::ImpliedIntensity,
            EmissionModel::LinearRegression(_) => ModelKind::LinearRegression,
        }
    }

    /// Years this model can evaluate, or `None` when it is year-independent.
    pub fn year_range(&self) -> Option<(i32, i32)> {
        match self {
            EmissionModel::ImpliedIntensity(m) => {
                Some((m.kappa[0].0, m.kappa[m.kappa.len() - 1].0))
            }
            EmissionModel::LinearRegression(_) => None,
        }
    }

    /// CO2 for one year's drivers, clamped at zero.
    pub fn predict(&self, year: i32, drivers: &DriverTuple) -> Result<Prediction> {
        let raw = match self {
            EmissionModel::ImpliedIntensity(m) => m.kappa_at(year)? * fossil_ai_twh(drivers),
            EmissionModel::LinearRegression(m) => {
                let b = &m.coefficients;
                b[0] + b[1] * drivers.semis_twh
                    + b[2] * drivers.dc_twh
                    + b[3] * drivers.mix_factor
                    + b[4] * drivers.ai_share
            }
        };
        if raw < 0.0 {
            Ok(Prediction {
                co2_mt: 0.0,
                clamped: true,
            })
        } else {
            Ok(Prediction {
                co2_mt: raw,
                clamped: false,
            })
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: EmissionModel = serde_json::from_str(s)?;
        m.check()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&s)
    }

    fn check(&self) -> Result<()> {
        match self {
            EmissionModel::ImpliedIntensity(m) => {
                if m.kappa.is_empty() {
                    return Err(Error::EmptyInput("kappa series is empty"));
                }
                if m.kappa.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
                    return Err(Error::InvalidSeries("kappa years must be contiguous".into()));
                }
                if let Some(&(y, k)) = m.kappa.iter().find(|k| !(k.1 > 0.0 && k.1.is_finite())) {
                    return Err(Error::InvalidSeries(format!("kappa {k} in {y} is not positive")));
                }
            }
            EmissionModel::LinearRegression(m) => {
                if !m.coefficients.iter().all(|c| c.is_finite()) {
                    return Err(Error::InvalidSeries("non-finite regression coefficient".into()));
                }
            }
        }
        Ok(())
    }
}
