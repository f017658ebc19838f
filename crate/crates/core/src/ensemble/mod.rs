//! Monte Carlo propagation of driver uncertainty into CO2 percentile bands.
//!
//! Each driver column gets a normal distribution per year, centred on the table value and
//! with a standard deviation recovered from a confidence-interval halfwidth. Every
//! realization draws a full set of driver trajectories, clamps them to their physical bounds,
//! and evaluates the fitted emission model year by year. Percentile bands are then taken
//! column-wise over the realization matrix.

pub mod export;
pub mod normal;
pub mod percentile;
pub mod rng;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{CorrelationMode, SimulationConfig};
use crate::drivers::{Driver, DriverTable, DriverTuple};
use crate::error::{Error, Result};
use crate::model::{self, EmissionModel};
use crate::series::{AnnualSeries, Unit};

pub use normal::{ci_to_sigma, inverse_normal_cdf, sigma_to_ci, two_sided_z};
pub use percentile::percentile;
use rng::NormalStream;

/// Normal perturbation of one driver over the table years.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSpec {
    pub variable: Driver,
    pub mean: AnnualSeries,
    /// Standard deviation per year of `mean`.
    pub sigma: Vec<f64>,
    /// Inclusive clamp interval.
    pub bounds: (f64, f64),
}

impl PerturbationSpec {
    pub fn new(variable: Driver, mean: AnnualSeries, sigma: Vec<f64>) -> Result<Self> {
        if sigma.len() != mean.len() {
            return Err(Error::InvalidConfig(format!(
                "{variable}: {} sigmas for {} years",
                sigma.len(),
                mean.len()
            )));
        }
        if let Some(s) = sigma.iter().find(|s| !(**s >= 0.0 && s.is_finite())) {
            return Err(Error::InvalidConfig(format!("{variable}: invalid sigma {s}")));
        }
        let bounds = bounds_for(variable);
        if let Some((y, v)) = mean
            .points()
            .iter()
            .find(|(_, v)| *v < bounds.0 || *v > bounds.1)
        {
            return Err(Error::InvalidConfig(format!(
                "{variable}: mean {v} in {y} lies outside its bounds"
            )));
        }
        Ok(Self {
            variable,
            mean,
            sigma,
            bounds,
        })
    }
}

/// Physical clamp interval: `[0, 1]` for shares, `[0, inf)` for energy.
pub fn bounds_for(d: Driver) -> (f64, f64) {
    if d.is_fraction() {
        (0.0, 1.0)
    } else {
        (0.0, f64::INFINITY)
    }
}

/// One spec per driver in [`Driver::ALL`] order.
pub fn build_perturbations(
    table: &DriverTable,
    config: &SimulationConfig,
) -> Result<Vec<PerturbationSpec>> {
    let z = two_sided_z(config.ci_level)?;
    Driver::ALL
        .iter()
        .map(|&d| {
            let spec = config
                .halfwidths
                .get(d)
                .ok_or(Error::MissingHalfwidth { variable: d, year: None })?;
            let mean = table.column(d);
            let sigma = mean
                .points()
                .iter()
                .map(|&(year, m)| {
                    let h = spec.at(year, m).ok_or(Error::MissingHalfwidth {
                        variable: d,
                        year: Some(year),
                    })?;
                    if !(h >= 0.0 && h.is_finite()) {
                        return Err(Error::NegativeInput(h));
                    }
                    Ok(h / z)
                })
                .collect::<Result<Vec<_>>>()?;
            PerturbationSpec::new(d, mean, sigma)
        })
        .collect()
}

/// One sampled emission trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub co2: AnnualSeries,
    /// Driver draws that fell outside their bounds and were clamped.
    pub driver_clamps: u64,
    /// Model outputs that were negative and clamped to zero.
    pub output_clamps: u64,
}

struct Row {
    values: Vec<f64>,
    driver_clamps: u64,
    output_clamps: u64,
}

fn check_specs(specs: &[PerturbationSpec], model: &EmissionModel) -> Result<Vec<i32>> {
    for (spec, d) in specs.iter().zip(Driver::ALL) {
        if spec.variable != d {
            return Err(Error::InvalidConfig(format!(
                "perturbations must be ordered {:?}",
                Driver::ALL
            )));
        }
    }
    if specs.len() != Driver::ALL.len() {
        let missing = Driver::ALL[specs.len().min(Driver::ALL.len() - 1)];
        return Err(Error::MissingHalfwidth { variable: missing, year: None });
    }
    let years: Vec<i32> = specs[0].mean.years().collect();
    if years.is_empty() {
        return Err(Error::EmptyInput("perturbations cover no years"));
    }
    if specs.iter().any(|s| !s.mean.years().eq(years.iter().copied())) {
        return Err(Error::InvalidConfig("perturbations cover different years".into()));
    }
    if let Some((first, last)) = model.year_range() {
        if let Some(&y) = years.iter().find(|&&y| y < first || y > last) {
            return Err(Error::YearOutsideFit { year: y, first, last });
        }
    }
    Ok(years)
}

fn sample_row(
    specs: &[PerturbationSpec],
    years: &[i32],
    model: &EmissionModel,
    mode: CorrelationMode,
    index: u64,
    master_seed: u64,
) -> Result<Row> {
    let mut stream = NormalStream::new(master_seed, index);
    let mut shared = [0.0f64; 4];
    if mode == CorrelationMode::CorrelatedPerVariable {
        for z in shared.iter_mut() {
            *z = stream.next_standard_normal();
        }
    }
    let mut row = Row {
        values: Vec::with_capacity(years.len()),
        driver_clamps: 0,
        output_clamps: 0,
    };
    for (t, &year) in years.iter().enumerate() {
        let mut drivers = DriverTuple {
            semis_twh: 0.0,
            dc_twh: 0.0,
            mix_factor: 0.0,
            ai_share: 0.0,
        };
        for (k, spec) in specs.iter().enumerate() {
            let z = match mode {
                CorrelationMode::CorrelatedPerVariable => shared[k],
                CorrelationMode::IndependentPerYear => stream.next_standard_normal(),
            };
            let raw = spec.mean.points()[t].1 + spec.sigma[t] * z;
            let (lo, hi) = spec.bounds;
            let v = raw.clamp(lo, hi);
            if v != raw {
                row.driver_clamps += 1;
            }
            drivers.set(spec.variable, v);
        }
        let p = model.predict(year, &drivers)?;
        row.output_clamps += u64::from(p.clamped);
        row.values.push(p.co2_mt);
    }
    Ok(row)
}

/// Draws and evaluates realization `index` of the ensemble seeded with `master_seed`.
pub fn sample_realization(
    specs: &[PerturbationSpec],
    model: &EmissionModel,
    mode: CorrelationMode,
    index: u64,
    master_seed: u64,
) -> Result<Realization> {
    let years = check_specs(specs, model)?;
    let row = sample_row(specs, &years, model, mode, index, master_seed)?;
    Ok(Realization {
        co2: AnnualSeries::new(Unit::MtCO2, years.into_iter().zip(row.values).collect())?,
        driver_clamps: row.driver_clamps,
        output_clamps: row.output_clamps,
    })
}

/// Whether realizations are evaluated on the rayon pool or the calling thread.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Realization matrix, row-major `[realization][year]`, in Mt CO2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleResult {
    pub years: Vec<i32>,
    values: Vec<f64>,
    pub master_seed: u64,
    pub config: SimulationConfig,
    pub driver_clamps: u64,
    pub output_clamps: u64,
}

impl EnsembleResult {
    /// Wraps an externally produced matrix; every row must have one value per year.
    pub fn from_rows(years: Vec<i32>, rows: Vec<Vec<f64>>, config: SimulationConfig) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        if let Some(r) = rows.iter().find(|r| r.len() != years.len()) {
            return Err(Error::InvalidConfig(format!(
                "realization has {} values for {} years",
                r.len(),
                years.len()
            )));
        }
        let values: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidSeries(format!("invalid emission value {v}")));
        }
        let config = SimulationConfig {
            realizations: values.len() / years.len().max(1),
            ..config
        };
        Ok(Self {
            years,
            values,
            master_seed: config.master_seed,
            config,
            driver_clamps: 0,
            output_clamps: 0,
        })
    }

    pub fn n_realizations(&self) -> usize {
        if self.years.is_empty() {
            0
        } else {
            self.values.len() / self.years.len()
        }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.years.len();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.years.len().max(1))
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }
}

/// Fits the configured model and runs the ensemble on the rayon pool.
pub fn run_simulation(table: &DriverTable, config: &SimulationConfig) -> Result<EnsembleResult> {
    run_simulation_with(table, config, Execution::Parallel)
}

pub fn run_simulation_with(
    table: &DriverTable,
    config: &SimulationConfig,
    execution: Execution,
) -> Result<EnsembleResult> {
    config.validate()?;
    let model = model::fit(table, config.model_kind)?;
    let specs = build_perturbations(table, config)?;
    run_with_model(&specs, &model, config, execution)
}

/// Runs the ensemble for an already fitted model and prepared perturbations.
pub fn run_with_model(
    specs: &[PerturbationSpec],
    model: &EmissionModel,
    config: &SimulationConfig,
    execution: Execution,
) -> Result<EnsembleResult> {
    config.validate()?;
    let years = check_specs(specs, model)?;
    let n = config.realizations as u64;
    let mode = config.correlation_mode;
    let seed = config.master_seed;
    let one = |i: u64| sample_row(specs, &years, model, mode, i, seed);
    let rows: Vec<Row> = match execution {
        Execution::Serial => (0..n).map(one).collect::<Result<_>>()?,
        Execution::Parallel => (0..n).into_par_iter().map(one).collect::<Result<_>>()?,
    };
    let driver_clamps = rows.iter().map(|r| r.driver_clamps).sum();
    let output_clamps = rows.iter().map(|r| r.output_clamps).sum();
    let values = rows.into_iter().flat_map(|r| r.values).collect();
    Ok(EnsembleResult {
        years,
        values,
        master_seed: seed,
        config: config.clone(),
        driver_clamps,
        output_clamps,
    })
}

/// Per-year percentiles and mean of an ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PercentileBands {
    pub percentiles: Vec<f64>,
    pub rows: Vec<BandRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandRow {
    pub year: i32,
    pub mean: f64,
    /// One value per entry of [`PercentileBands::percentiles`].
    pub values: Vec<f64>,
}

impl PercentileBands {
    pub fn row(&self, year: i32) -> Option<&BandRow> {
        self.rows.iter().find(|r| r.year == year)
    }

    /// Value of percentile `p` in `year`, if both were computed.
    pub fn get(&self, year: i32, p: f64) -> Option<f64> {
        let k = self.percentiles.iter().position(|&q| q == p)?;
        self.row(year).map(|r| r.values[k])
    }
}

pub fn bands(result: &EnsembleResult, percentiles: &[f64]) -> Result<PercentileBands> {
    if result.n_realizations() == 0 {
        return Err(Error::EmptyEnsemble);
    }
    crate::config::validate_percentiles(percentiles)?;
    let rows = result
        .years
        .iter()
        .enumerate()
        .map(|(j, &year)| {
            let mut col = result.column(j);
            col.sort_by(f64::total_cmp);
            let values = percentiles
                .iter()
                .map(|&p| percentile::percentile_sorted(&col, p))
                .collect();
            BandRow {
                year,
                mean: sorted_mean(&col),
                values,
            }
        })
        .collect();
    Ok(PercentileBands {
        percentiles: percentiles.to_vec(),
        rows,
    })
}

/// Mean of a sorted column, accumulated as offsets from its minimum so a constant column
/// returns its value exactly.
fn sorted_mean(sorted: &[f64]) -> f64 {
    let lo = sorted[0];
    let hi = sorted[sorted.len() - 1];
    let spread: f64 = sorted.iter().map(|v| v - lo).sum();
    (lo + spread / sorted.len() as f64).clamp(lo, hi)
}
