use std::fmt;
use std::path::PathBuf;

use crate::drivers::Driver;

/// Library-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong between reading a dataset and writing percentile bands.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("EmptyInput: {0}")]
    EmptyInput(&'static str),

    #[error("UnitMismatch: expected {expected}, found {found}")]
    UnitMismatch { expected: String, found: String },

    #[error("DisjointYearRanges: trajectories share no common year")]
    DisjointYearRanges,

    #[error("UnknownScenarioName: {0:?} is not in the alignment dictionary")]
    UnknownScenarioName(String),

    #[error("DuplicateScenario: ({name}, {family}) appears more than once")]
    DuplicateScenario { name: String, family: String },

    #[error("InvalidSeries: {0}")]
    InvalidSeries(String),

    #[error("invalid driver table:\n{}", format_violations(.0))]
    DriverTable(Vec<TableViolation>),

    #[error("DegenerateRow: zero driver product in year(s) {0:?}")]
    DegenerateRow(Vec<i32>),

    #[error("RankDeficientDesign: column {column} is linearly dependent on earlier columns")]
    RankDeficientDesign { column: usize },

    #[error("TooFewRows: regression needs at least {needed} rows, got {got}")]
    TooFewRows { needed: usize, got: usize },

    #[error("YearOutsideFit: {year} is outside the fitted range {first}..={last}")]
    YearOutsideFit { year: i32, first: i32, last: i32 },

    #[error("InvalidLevel: confidence level {0} is not in (0, 1)")]
    InvalidLevel(f64),

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("MissingHalfwidth: no halfwidth for {variable}{}", .year.map(|y| format!(" in {y}")).unwrap_or_default())]
    MissingHalfwidth { variable: Driver, year: Option<i32> },

    #[error("EmptyEnsemble: no realizations to summarize")]
    EmptyEnsemble,

    #[error("NegativeInput: {0} must be non-negative")]
    NegativeInput(f64),

    #[error("UnknownTask: {0:?}")]
    UnknownTask(String),

    #[error("SchemaError at line {line}, column {column}: {reason}")]
    Schema {
        line: u64,
        column: usize,
        reason: String,
    },

    #[error("IOError on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn schema(line: u64, column: usize, reason: impl Into<String>) -> Self {
        Error::Schema {
            line,
            column,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// One failed row check reported by driver-table validation.
#[derive(Debug, Clone, PartialEq)]
pub enum TableViolation {
    GapInYears { after: i32, next: i32 },
    FractionOutOfRange { year: i32, column: Driver, value: f64 },
    NonPositiveValue { year: i32, column: &'static str, value: f64 },
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableViolation::GapInYears { after, next } => {
                write!(f, "GapInYears: {after} is followed by {next}")
            }
            TableViolation::FractionOutOfRange {
                year,
                column,
                value,
            } => write!(f, "FractionOutOfRange: {column}={value} in {year}"),
            TableViolation::NonPositiveValue {
                year,
                column,
                value,
            } => write!(f, "NonPositiveValue: {column}={value} in {year}"),
        }
    }
}

fn format_violations(v: &[TableViolation]) -> String {
    v.iter()
        .map(|x| format!("  - {x}"))
        .collect::<Vec<_>>()
        .join("\n")
}
