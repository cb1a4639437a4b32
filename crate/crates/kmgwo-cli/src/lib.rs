//! Experiment harness for the kmgwo library: repeated seeded runs, summary
//! statistics, rank-sum significance tests, and CSV exports.

pub mod config;
pub mod experiment;
pub mod export;
pub mod stats;

use std::path::PathBuf;

/// Harness-level errors, mapped to process exit codes by the binary.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),

    #[error("data: {0}")]
    Data(String),

    #[error("runtime: {0}")]
    Runtime(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    /// 2 = configuration error, 3 = data ingestion error, 4 = runtime failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Data(_) => 3,
            HarnessError::Runtime(_) | HarnessError::Io { .. } => 4,
        }
    }
}

impl From<kmgwo::Error> for HarnessError {
    fn from(err: kmgwo::Error) -> Self {
        match err {
            kmgwo::Error::InvalidConfig(msg) => HarnessError::Config(msg),
            kmgwo::Error::Data(data) => HarnessError::Data(data.to_string()),
            runtime @ kmgwo::Error::NonFiniteFitness { .. } => {
                HarnessError::Runtime(runtime.to_string())
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
