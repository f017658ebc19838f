//! Probabilistic CO2 emission scenarios for data-center and AI electricity demand.
//!
//! The pipeline, end to end:
//!
//! 1. Load annual driver trajectories ([`drivers::DriverTable`]): semiconductor and
//!    data-center electricity, the fossil share of generation, the AI share of data-center
//!    load, and observed or forecast CO2.
//! 2. Fit an [`model::EmissionModel`] that maps a year's drivers to CO2.
//! 3. Turn per-driver confidence-interval halfwidths into normal perturbations and run a
//!    seeded Monte Carlo ensemble ([`ensemble::run_simulation`]).
//! 4. Summarize the ensemble into P5/P50/P95 bands ([`ensemble::bands`]).
//!
//! Scenario trajectories from different studies can be aligned into groups and averaged into a
//! mean scenario ([`scenario`]). The [`ingest`] module also carries compound-growth,
//! doubling-time, household-equivalence and inference-energy helpers.
//!
//! ```
//! use emisim::{config::SimulationConfig, ensemble, ingest::bundled};
//!
//! let table = bundled::driver_table();
//! let config = SimulationConfig { realizations: 500, ..Default::default() };
//! let result = ensemble::run_simulation(&table, &config).unwrap();
//! let bands = ensemble::bands(&result, &config.percentiles).unwrap();
//! let p50 = bands.get(2030, 50.0).unwrap();
//! assert!((p50 - 126.0).abs() < 10.0);
//! ```

pub mod cli;
pub mod config;
pub mod drivers;
pub mod ensemble;
pub mod error;
pub mod ingest;
pub mod model;
pub mod scenario;
pub mod series;

pub use config::{CorrelationMode, Halfwidths, HalfwidthSpec, ModelKind, SimulationConfig};
pub use drivers::{validate_driver_table, Driver, DriverRow, DriverTable, DriverTuple};
pub use ensemble::{bands, run_simulation, EnsembleResult, PercentileBands};
pub use error::{Error, Result};
pub use model::EmissionModel;
pub use scenario::{align_scenarios, mean_scenario, AlignmentGroup, Family, ScenarioTrajectory};
pub use series::{AnnualSeries, Unit};
