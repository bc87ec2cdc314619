use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type. Variants are grouped by the subsystem that
/// produces them; everything carries enough context to point a user at
/// the offending file, line or row.
#[derive(Debug, Error)]
pub enum Error {
    // log parsing
    #[error("malformed log event at line {line}: {reason}")]
    MalformedEvent { line: usize, reason: String },
    #[error("run log contains no run_start event")]
    MissingRunStart,
    #[error("run log contains no run_stop event")]
    MissingRunStop,
    #[error("event at line {line} moves backwards in time")]
    NonMonotonicTime { line: usize },
    #[error("unbalanced {key} intervals: {reason}")]
    UnbalancedIntervals { key: String, reason: String },

    // submission loading
    #[error("results reference system {system:?} but no system description exists")]
    MissingSystemFile { system: String },
    #[error("no parseable result files in {dir}")]
    EmptyEntry { dir: PathBuf },

    // scoring / modelling
    #[error("need at least {need} successful runs, have {have}")]
    InsufficientRuns { have: usize, need: usize },
    #[error("decomposition remainder is negative ({extra_ms} ms)")]
    NegativeRemainder { extra_ms: f64 },
    #[error("batch {batch} outside curve span [{lo}, {hi}]")]
    OutOfCurveRange { batch: u64, lo: u64, hi: u64 },

    // stats
    #[error("empty input")]
    EmptyInput,
    #[error("non-positive value where a positive one is required")]
    NonPositiveValue,

    // characterization
    #[error("malformed row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },

    // synth / cli
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    // context wrappers
    #[error("{file}: {source}")]
    InFile {
        file: PathBuf,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {reason}")]
    Json { path: PathBuf, reason: String },
}

impl Error {
    pub fn in_file(self, file: impl Into<PathBuf>) -> Error {
        Error::InFile {
            file: file.into(),
            source: Box::new(self),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
