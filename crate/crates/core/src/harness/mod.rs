//! Seeded batch experiments: configuration, trial execution, summaries and
//! CSV/JSON emission.

mod config;
mod emit;
mod record;
mod run;

pub use config::{Algorithm, ConfigError, ExperimentConfig, Format, GeneratorSpec};
pub use emit::{emit, read_csv, read_json, write_csv, write_json, CsvRow};
pub use record::{CheckOutcome, StepStat, TrialRecord};
pub use run::{generate, median, run_experiment, run_trial, CheckSummary, Experiment, Summary};

use crate::graph::GraphError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no records to emit")]
    Empty,
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> HarnessError {
        HarnessError::Io(e.to_string())
    }
}

impl From<csv::Error> for HarnessError {
    fn from(e: csv::Error) -> HarnessError {
        HarnessError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> HarnessError {
        HarnessError::Io(e.to_string())
    }
}
