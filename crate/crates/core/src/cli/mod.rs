//! The `emisim` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 validation, 3 I/O, 4 numeric failure.
//!
//! Simulation settings resolve as flags, then `--config` file, then `EMISIM_SEED` (seed only),
//! then built-in defaults. The effective configuration is recorded in the run manifest.

pub mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{CorrelationMode, Halfwidths, ModelKind, SimulationConfig};
use crate::drivers::DriverTable;
use crate::ensemble::{self, export, Execution};
use crate::error::{Error, Result};
use crate::ingest::{self, bundled, growth, ScenarioBundle};
use crate::model::{self, EmissionModel};
use crate::scenario::{align_scenarios, mean_scenario, ScenarioTrajectory};
use crate::series::{AnnualSeries, Unit};

use manifest::{InputDigest, RunManifest, StagedWrites};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

/// Environment variable that replaces the built-in default seed.
pub const SEED_ENV: &str = "EMISIM_SEED";

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => EXIT_IO,
            Error::DegenerateRow(_)
            | Error::RankDeficientDesign { .. }
            | Error::TooFewRows { .. }
            | Error::YearOutsideFit { .. } => EXIT_NUMERIC,
            _ => EXIT_VALIDATION,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "emisim", version, about = "Probabilistic CO2 scenarios for data centers and AI")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a driver table, series, scenario bundle or ensemble file
    Validate(ValidateArgs),
    /// Emission trajectory per scenario plus the mean scenario
    Emissions(EmissionsArgs),
    /// Mean scenario of a bundle over the years every trajectory covers
    Mean(MeanArgs),
    /// Fit an emission model and print it as JSON
    Fit(FitArgs),
    /// Run the Monte Carlo ensemble and write percentile bands plus a run manifest
    Simulate(SimulateArgs),
    /// Percentile bands from an ensemble CSV
    Bands(BandsArgs),
    /// Number of US homes with the same yearly emissions as the given Mt CO2
    Equiv(EquivArgs),
    /// Compound-growth or doubling-time projection
    Project(ProjectArgs),
    /// Inference energy for a model task
    InferenceEnergy(InferenceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Intensity,
    Regression,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Intensity => ModelKind::ImpliedIntensity,
            ModelArg::Regression => ModelKind::LinearRegression,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorrelationArg {
    PerVariable,
    PerYear,
}

impl From<CorrelationArg> for CorrelationMode {
    fn from(c: CorrelationArg) -> Self {
        match c {
            CorrelationArg::PerVariable => CorrelationMode::CorrelatedPerVariable,
            CorrelationArg::PerYear => CorrelationMode::IndependentPerYear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum FormatArg {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    #[value(name = "TWh")]
    TWh,
    #[value(name = "MtCO2")]
    MtCO2,
    #[value(name = "Fraction")]
    Fraction,
    #[value(name = "Wh")]
    Wh,
}

impl From<UnitArg> for Unit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::TWh => Unit::TWh,
            UnitArg::MtCO2 => Unit::MtCO2,
            UnitArg::Fraction => Unit::Fraction,
            UnitArg::Wh => Unit::Wh,
        }
    }
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// File to check; the kind is detected from the extension and header
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Unit of a `year,value` series file
    #[arg(long, value_enum, default_value = "TWh")]
    pub unit: UnitArg,
}

#[derive(Debug, Args)]
pub struct EmissionsArgs {
    /// Scenario bundle (.json) or driver table (.csv); defaults to the bundled AI CO2 scenarios
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Driver table used to convert TWh bundles to CO2; defaults to the bundled table
    #[arg(long, value_name = "PATH")]
    pub drivers: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "intensity")]
    pub model: ModelArg,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct MeanArgs {
    /// Scenario bundle (.json); defaults to the bundled AI CO2 scenarios
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Driver table (.csv or .json); defaults to the bundled table
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "intensity")]
    pub model: ModelArg,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Driver table (.csv or .json); defaults to the bundled table
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// JSON simulation config; flags override its fields
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    #[arg(long, value_name = "N")]
    pub realizations: Option<usize>,
    /// Master seed; overrides the config file and EMISIM_SEED
    #[arg(long, value_name = "U64")]
    pub seed: Option<u64>,
    /// Confidence level the halfwidths refer to, in (0, 1)
    #[arg(long, value_name = "F")]
    pub ci_level: Option<f64>,
    /// Halfwidth for every driver as a percentage of its mean
    #[arg(long, value_name = "F", conflicts_with = "halfwidths")]
    pub halfwidth_pct: Option<f64>,
    /// JSON file of per-driver halfwidths
    #[arg(long, value_name = "PATH")]
    pub halfwidths: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub correlation: Option<CorrelationArg>,
    /// Comma-separated percentiles, e.g. 5,50,95
    #[arg(long, value_name = "CSV")]
    pub percentiles: Option<String>,
    /// Bands output; the manifest is written next to it. Prints to stdout when omitted
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Also write the full realization matrix as CSV
    #[arg(long, value_name = "PATH")]
    pub ensemble_out: Option<PathBuf>,
    /// Worker threads; 1 runs serially
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BandsArgs {
    /// Ensemble CSV written by `simulate --ensemble-out`
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Comma-separated percentiles, e.g. 5,50,95
    #[arg(long, value_name = "CSV", default_value = "5,50,95")]
    pub percentiles: String,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    /// Emissions in Mt CO2 per year
    #[arg(value_name = "MT", allow_negative_numbers = true)]
    pub co2_mt: f64,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// Starting value
    #[arg(long)]
    pub base: f64,
    /// Annual growth rate as a fraction (0.15 = 15%)
    #[arg(long, requires = "years", conflicts_with_all = ["doubling_months", "horizon"])]
    pub rate: Option<f64>,
    /// Number of years to compound
    #[arg(long, requires = "rate")]
    pub years: Option<u32>,
    /// First year label of the projected series
    #[arg(long, default_value_t = 0, requires = "rate")]
    pub start_year: i32,
    /// Doubling time in months
    #[arg(long, requires = "horizon")]
    pub doubling_months: Option<f64>,
    /// Projection horizon in months
    #[arg(long, requires = "doubling_months")]
    pub horizon: Option<f64>,
    /// Write the compound-growth series as CSV
    #[arg(long, value_name = "PATH", requires = "rate")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InferenceArgs {
    /// Task name, e.g. image_generation; lists every task when omitted
    #[arg(long)]
    pub task: Option<String>,
    /// Number of listed units (1000 inferences each)
    #[arg(long, default_value_t = 1)]
    pub count: u64,
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Validate(a) => cmd_validate(&a, out),
        Command::Emissions(a) => cmd_emissions(&a, out),
        Command::Mean(a) => cmd_mean(&a, out),
        Command::Fit(a) => cmd_fit(&a, out),
        Command::Simulate(a) => cmd_simulate(&a, out),
        Command::Bands(a) => cmd_bands(&a, out),
        Command::Equiv(a) => cmd_equiv(&a, out),
        Command::Project(a) => cmd_project(&a, out),
        Command::InferenceEnergy(a) => cmd_inference(&a, out),
    }
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Writes to `path` atomically, or to `out` when no path is given.
fn emit(path: Option<&Path>, content: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => manifest::write_atomic(p, content.as_bytes()),
        None => out.write_all(content.as_bytes()).map_err(stdout_err),
    }
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Input bytes and a display name, falling back to a bundled dataset.
fn read_input(path: Option<&Path>, bundled_name: &str, bundled_text: &str) -> Result<(String, String)> {
    match path {
        Some(p) => Ok((p.display().to_string(), ingest::read_text(p)?)),
        None => Ok((format!("<bundled:{bundled_name}>"), bundled_text.to_string())),
    }
}

fn load_table(path: Option<&Path>) -> Result<(String, String, DriverTable)> {
    let (name, text) = read_input(path, "table2.csv", bundled::TABLE2_CSV)?;
    let table = match path {
        Some(p) if is_json(p) => ingest::parse_driver_json(&text)?,
        _ => ingest::parse_driver_str(&text)?,
    };
    Ok((name, text, table))
}

fn load_bundle(path: Option<&Path>) -> Result<ScenarioBundle> {
    let (_, text) = read_input(path, "ai_co2_scenarios.json", bundled::AI_CO2_SCENARIOS_JSON)?;
    ScenarioBundle::from_json(&text)
}

pub fn cmd_validate(a: &ValidateArgs, out: &mut dyn Write) -> Result<()> {
    let text = ingest::read_text(&a.input)?;
    let summary = if is_json(&a.input) {
        if text.trim_start().starts_with('[') {
            let t = ingest::parse_driver_json(&text)?;
            format!("driver table: {} rows, {}-{}", t.len(), t.first_year(), t.last_year())
        } else {
            let b = ScenarioBundle::from_json(&text)?;
            let aligned = align_scenarios(b.trajectories().to_vec())?;
            format!("scenario bundle: {} trajectories, all aligned", aligned.len())
        }
    } else {
        let header = text.lines().next().unwrap_or_default().trim();
        if header.starts_with("realization") {
            let e = export::ensemble_from_csv(&text)?;
            format!("ensemble: {} realizations x {} years", e.n_realizations(), e.years.len())
        } else if header == ingest::SERIES_HEADER.join(",") {
            let s = ingest::parse_series_str(&text, a.unit.into())?;
            format!("series: {} points in {}", s.len(), s.unit())
        } else {
            let t = ingest::parse_driver_str(&text)?;
            format!("driver table: {} rows, {}-{}", t.len(), t.first_year(), t.last_year())
        }
    };
    writeln!(out, "ok: {summary}").map_err(stdout_err)
}

/// CO2 trajectory for one scenario.
struct NamedCurve {
    name: String,
    series: AnnualSeries,
}

fn trajectories_to_co2(
    bundle: &[ScenarioTrajectory],
    table: &DriverTable,
    model: &EmissionModel,
) -> Result<Vec<ScenarioTrajectory>> {
    bundle
        .iter()
        .map(|t| match t.series.unit() {
            Unit::MtCO2 => Ok(t.clone()),
            Unit::TWh => {
                // data-center demand substituted into the table's drivers
                let mut points = Vec::new();
                for &(year, twh) in t.series.points() {
                    let Some(row) = table.row(year) else { continue };
                    let mut d = row.drivers();
                    d.dc_twh = twh;
                    points.push((year, model.predict(year, &d)?.co2_mt));
                }
                let series = AnnualSeries::new(Unit::MtCO2, points)?;
                Ok(ScenarioTrajectory {
                    series,
                    ..t.clone()
                })
            }
            other => Err(Error::UnitMismatch {
                expected: "MtCO2 or TWh".into(),
                found: other.to_string(),
            }),
        })
        .collect()
}

fn curves_to_csv(curves: &[NamedCurve]) -> Result<String> {
    let years: Vec<i32> = curves[curves.len() - 1].series.years().collect();
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut header = vec!["year".to_string()];
    header.extend(curves.iter().map(|c| c.name.clone()));
    w.write_record(&header).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    for y in years {
        let mut rec = vec![y.to_string()];
        for c in curves {
            rec.push(c.series.get(y).map(|v| v.to_string()).unwrap_or_default());
        }
        w.write_record(&rec).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidConfig(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn curves_to_json(curves: &[NamedCurve]) -> Result<String> {
    let doc: Vec<serde_json::Value> = curves
        .iter()
        .map(|c| serde_json::json!({ "name": c.name, "unit": c.series.unit(), "points": c.series.points() }))
        .collect();
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Per-scenario emissions plus their mean, as curves in output order.
pub fn emissions_curves(
    input: Option<&Path>,
    drivers: Option<&Path>,
    kind: ModelKind,
) -> Result<Vec<(String, AnnualSeries)>> {
    let (_, _, table) = load_table(drivers)?;
    let model = model::fit(&table, kind)?;
    let trajectories: Vec<ScenarioTrajectory> = match input {
        Some(p) if !is_json(p) => {
            let (_, _, t) = load_table(Some(p))?;
            let m = model::fit(&t, kind)?;
            let points = t
                .rows()
                .iter()
                .map(|r| Ok((r.year, m.predict(r.year, &r.drivers())?.co2_mt)))
                .collect::<Result<Vec<_>>>()?;
            vec![ScenarioTrajectory::new(
                "drivers",
                crate::scenario::Family::AiStudy,
                AnnualSeries::new(Unit::MtCO2, points)?,
            )]
        }
        _ => {
            let bundle = load_bundle(input)?;
            trajectories_to_co2(bundle.trajectories(), &table, &model)?
        }
    };
    let mean = mean_scenario(&trajectories)?;
    let mut curves: Vec<(String, AnnualSeries)> = trajectories
        .into_iter()
        .map(|t| (t.name, t.series))
        .collect();
    curves.push(("mean".to_string(), mean));
    Ok(curves)
}

pub fn cmd_emissions(a: &EmissionsArgs, out: &mut dyn Write) -> Result<()> {
    let curves: Vec<NamedCurve> = emissions_curves(a.input.as_deref(), a.drivers.as_deref(), a.model.into())?
        .into_iter()
        .map(|(name, series)| NamedCurve { name, series })
        .collect();
    let text = match a.format {
        FormatArg::Csv => curves_to_csv(&curves)?,
        FormatArg::Json => curves_to_json(&curves)?,
    };
    emit(a.out.as_deref(), &text, out)
}

pub fn cmd_mean(a: &MeanArgs, out: &mut dyn Write) -> Result<()> {
    let bundle = load_bundle(a.input.as_deref())?;
    let mean = mean_scenario(bundle.trajectories())?;
    let text = match a.format {
        FormatArg::Csv => ingest::series_to_csv(&mean),
        FormatArg::Json => {
            let pts: Vec<_> = mean
                .points()
                .iter()
                .map(|(y, v)| serde_json::json!({ "year": y, "value": v }))
                .collect();
            serde_json::to_string_pretty(&pts)? + "\n"
        }
    };
    emit(a.out.as_deref(), &text, out)
}

pub fn cmd_fit(a: &FitArgs, out: &mut dyn Write) -> Result<()> {
    let (_, _, table) = load_table(a.input.as_deref())?;
    let m = model::fit(&table, a.model.into())?;
    emit(a.out.as_deref(), &(m.to_json()? + "\n"), out)
}

fn parse_percentiles(s: &str) -> Result<Vec<f64>> {
    let ps = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("bad percentile {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    crate::config::validate_percentiles(&ps)?;
    Ok(ps)
}

/// Resolves the effective simulation config from flags, config file, environment, defaults.
pub fn resolve_config(a: &SimulateArgs, env_seed: Option<&str>) -> Result<SimulationConfig> {
    let file_value: Option<serde_json::Value> = match &a.config {
        Some(p) => Some(serde_json::from_str(&ingest::read_text(p)?)?),
        None => None,
    };
    let mut c: SimulationConfig = match &file_value {
        Some(v) => serde_json::from_value(v.clone())?,
        None => SimulationConfig::default(),
    };
    let file_has_seed = file_value
        .as_ref()
        .and_then(|v| v.get("master_seed"))
        .is_some();
    if !file_has_seed {
        if let Some(s) = env_seed {
            c.master_seed = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("{SEED_ENV}={s:?} is not a u64")))?;
        }
    }
    if let Some(s) = a.seed {
        c.master_seed = s;
    }
    if let Some(m) = a.model {
        c.model_kind = m.into();
    }
    if let Some(n) = a.realizations {
        c.realizations = n;
    }
    if let Some(l) = a.ci_level {
        c.ci_level = l;
    }
    if let Some(pct) = a.halfwidth_pct {
        if !(pct >= 0.0 && pct.is_finite()) {
            return Err(Error::NegativeInput(pct));
        }
        c.halfwidths = Halfwidths::uniform_fraction(pct / 100.0);
    }
    if let Some(p) = &a.halfwidths {
        c.halfwidths = serde_json::from_str(&ingest::read_text(p)?)?;
    }
    if let Some(m) = a.correlation {
        c.correlation_mode = m.into();
    }
    if let Some(p) = &a.percentiles {
        c.percentiles = parse_percentiles(p)?;
    }
    c.validate()?;
    Ok(c)
}

pub fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let started = Instant::now();
    let env_seed = std::env::var(SEED_ENV).ok();
    let config = resolve_config(a, env_seed.as_deref())?;
    let (input_name, input_text, table) = load_table(a.input.as_deref())?;

    let model = model::fit(&table, config.model_kind)?;
    let specs = ensemble::build_perturbations(&table, &config)?;
    let result = match a.threads {
        Some(1) => ensemble::run_with_model(&specs, &model, &config, Execution::Serial)?,
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidConfig(e.to_string()))?;
            pool.install(|| ensemble::run_with_model(&specs, &model, &config, Execution::Parallel))?
        }
        None => ensemble::run_with_model(&specs, &model, &config, Execution::Parallel)?,
    };
    let bands = ensemble::bands(&result, &config.percentiles)?;
    let text = match a.format {
        FormatArg::Csv => export::bands_to_csv(&bands),
        FormatArg::Json => export::bands_to_json(&bands)?,
    };

    let Some(out_path) = a.out.as_deref() else {
        if let Some(p) = a.ensemble_out.as_deref() {
            manifest::write_atomic(p, export::ensemble_to_csv(&result).as_bytes())?;
        }
        return out.write_all(text.as_bytes()).map_err(stdout_err);
    };

    let mut inputs = vec![InputDigest::of(input_name, input_text.as_bytes())];
    for p in [&a.config, &a.halfwidths].into_iter().flatten() {
        inputs.push(InputDigest::of(p.display().to_string(), ingest::read_text(p)?.as_bytes()));
    }
    let manifest_path = manifest::manifest_path(out_path);
    let mut outputs = vec![out_path.display().to_string()];
    if let Some(p) = &a.ensemble_out {
        outputs.push(p.display().to_string());
    }
    outputs.push(manifest_path.display().to_string());

    let mut staged = StagedWrites::default();
    staged.stage(out_path, text.as_bytes())?;
    if let Some(p) = a.ensemble_out.as_deref() {
        staged.stage(p, export::ensemble_to_csv(&result).as_bytes())?;
    }
    let m = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: "simulate".to_string(),
        master_seed: config.master_seed,
        config: config.clone(),
        inputs,
        outputs,
        threads: a.threads,
        driver_clamps: result.driver_clamps,
        output_clamps: result.output_clamps,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    staged.stage(&manifest_path, (serde_json::to_string_pretty(&m)? + "\n").as_bytes())?;
    staged.commit()?;
    writeln!(
        out,
        "wrote {} ({} realizations, seed {}, {} driver clamps)",
        out_path.display(),
        result.n_realizations(),
        config.master_seed,
        result.driver_clamps
    )
    .map_err(stdout_err)
}

pub fn cmd_bands(a: &BandsArgs, out: &mut dyn Write) -> Result<()> {
    let percentiles = parse_percentiles(&a.percentiles)?;
    let result = export::ensemble_from_csv(&ingest::read_text(&a.input)?)?;
    let bands = ensemble::bands(&result, &percentiles)?;
    let text = match a.format {
        FormatArg::Csv => export::bands_to_csv(&bands),
        FormatArg::Json => export::bands_to_json(&bands)?,
    };
    emit(a.out.as_deref(), &text, out)
}

/// `13500000` -> `13.5e6`.
fn millions(v: f64) -> String {
    let s = format!("{:.4}", v / 1e6);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    format!("{s}e6")
}

pub fn cmd_equiv(a: &EquivArgs, out: &mut dyn Write) -> Result<()> {
    let homes = ingest::equivalent_homes(a.co2_mt)?;
    writeln!(out, "{} homes", millions(homes)).map_err(stdout_err)
}

pub fn cmd_project(a: &ProjectArgs, out: &mut dyn Write) -> Result<()> {
    match (a.rate, a.years, a.doubling_months, a.horizon) {
        (Some(rate), Some(years), None, None) => {
            let s = growth::cagr_project(a.base, rate, a.start_year, years)?;
            if let Some(p) = &a.out {
                manifest::write_atomic(p, ingest::series_to_csv(&s).as_bytes())?;
            }
            let last = s.points()[s.len() - 1].1;
            writeln!(out, "{last:.2}").map_err(stdout_err)
        }
        (None, None, Some(d), Some(h)) => {
            let v = growth::doubling_project(a.base, d, h)?;
            writeln!(out, "{v:.2}").map_err(stdout_err)
        }
        _ => Err(Error::InvalidConfig(
            "give either --rate and --years, or --doubling-months and --horizon".into(),
        )),
    }
}

pub fn cmd_inference(a: &InferenceArgs, out: &mut dyn Write) -> Result<()> {
    let table = bundled::inference_energy_table();
    match &a.task {
        Some(t) => {
            let task: ingest::InferenceTask = t.parse()?;
            writeln!(out, "{} Wh", table.energy(task, a.count)).map_err(stdout_err)
        }
        None => {
            for e in table.entries() {
                writeln!(out, "{}: {} Wh per {}", e.task, e.energy_wh, e.unit).map_err(stdout_err)?;
            }
            Ok(())
        }
    }
}
