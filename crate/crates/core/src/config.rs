use serde::{Deserialize, Serialize};

use crate::drivers::Driver;
use crate::error::{Error, Result};

/// Which emission model maps drivers to CO2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    #[default]
    ImpliedIntensity,
    LinearRegression,
}

/// How standard-normal draws are shared across years.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationMode {
    /// One draw per variable per realization, applied to every year.
    #[default]
    CorrelatedPerVariable,
    /// A fresh draw per variable per year.
    IndependentPerYear,
}

/// Confidence-interval halfwidth for one driver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfwidthSpec {
    /// Halfwidth as a fraction of that year's mean value.
    FractionOfMean(f64),
    /// Absolute halfwidth per year, in the driver's unit.
    Absolute(Vec<(i32, f64)>),
}

impl HalfwidthSpec {
    /// Halfwidth for `year` given that year's mean.
    pub fn at(&self, year: i32, mean: f64) -> Option<f64> {
        match self {
            HalfwidthSpec::FractionOfMean(f) => Some(f * mean),
            HalfwidthSpec::Absolute(points) => points
                .binary_search_by_key(&year, |p| p.0)
                .ok()
                .map(|i| points[i].1),
        }
    }
}

/// Per-driver halfwidths. A missing entry is an error at perturbation time.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Halfwidths {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semis_twh: Option<HalfwidthSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dc_twh: Option<HalfwidthSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mix_factor: Option<HalfwidthSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ai_share: Option<HalfwidthSpec>,
}

impl Halfwidths {
    /// The same fraction of the mean for every driver.
    pub fn uniform_fraction(fraction: f64) -> Self {
        let spec = || Some(HalfwidthSpec::FractionOfMean(fraction));
        Self {
            semis_twh: spec(),
            dc_twh: spec(),
            mix_factor: spec(),
            ai_share: spec(),
        }
    }

    pub fn get(&self, d: Driver) -> Option<&HalfwidthSpec> {
        match d {
            Driver::SemisTwh => self.semis_twh.as_ref(),
            Driver::DcTwh => self.dc_twh.as_ref(),
            Driver::MixFactor => self.mix_factor.as_ref(),
            Driver::AiShare => self.ai_share.as_ref(),
        }
    }
}

/// Default halfwidth for the bundled reproduction: +/-10% of the mean for every driver.
pub const DEFAULT_HALFWIDTH_FRACTION: f64 = 0.10;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_REALIZATIONS: usize = 10_000;
pub const DEFAULT_CI_LEVEL: f64 = 0.99;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimulationConfig {
    pub realizations: usize,
    pub master_seed: u64,
    pub ci_level: f64,
    pub halfwidths: Halfwidths,
    pub correlation_mode: CorrelationMode,
    pub percentiles: Vec<f64>,
    pub model_kind: ModelKind,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            realizations: DEFAULT_REALIZATIONS,
            master_seed: DEFAULT_SEED,
            ci_level: DEFAULT_CI_LEVEL,
            halfwidths: Halfwidths::uniform_fraction(DEFAULT_HALFWIDTH_FRACTION),
            correlation_mode: CorrelationMode::default(),
            percentiles: vec![5.0, 50.0, 95.0],
            model_kind: ModelKind::default(),
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::InvalidConfig("realizations must be at least 1".into()));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(Error::InvalidLevel(self.ci_level));
        }
        validate_percentiles(&self.percentiles)
    }
}

/// Percentiles must be non-empty, inside (0, 100) and strictly increasing.
pub fn validate_percentiles(ps: &[f64]) -> Result<()> {
    if ps.is_empty() {
        return Err(Error::InvalidConfig("at least one percentile is required".into()));
    }
    if let Some(p) = ps.iter().find(|p| !(**p > 0.0 && **p < 100.0)) {
        return Err(Error::InvalidConfig(format!("percentile {p} is not in (0, 100)")));
    }
    if ps.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig("percentiles must be strictly increasing".into()));
    }
    Ok(())
}
