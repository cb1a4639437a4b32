use std::path::PathBuf;

/// Errors surfaced by the library.
///
/// Contract violations (dimension mismatches, stale fitness where fresh
/// fitness is required) panic instead; they indicate caller bugs, not
/// recoverable conditions.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter set cannot be run as configured.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An objective produced NaN; carries the iteration (0 = initial
    /// evaluation pass) and the index of the offending agent.
    #[error("objective returned NaN at iteration {iteration}, agent {agent}")]
    NonFiniteFitness { iteration: usize, agent: usize },

    /// Benchmark data ingestion failed.
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Failures while loading CEC2019 shift/rotation data files.
#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("missing data file for F{function}: expected {path}")]
    MissingFile { function: u8, path: PathBuf },

    #[error("{path}: line {line}, column {column}: cannot parse {token:?} as a number")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        token: String,
    },

    #[error("{path}: expected {expected} values, found {actual}")]
    WrongCount {
        path: PathBuf,
        expected: usize,
        actual: usize,
    },

    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
