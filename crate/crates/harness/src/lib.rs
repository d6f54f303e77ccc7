//! Experiment sweeps over certified landscapes: trials on a worker pool, bound
//! checks against the step-count bounds, and CSV/JSON reports.

pub mod config;
pub mod experiment;
pub mod report;

use thiserror::Error;
use vcsp_core::{CoreError, GeneratorError, OracleError, SearchError};

pub use config::{BoundChecks, ExperimentConfig, InstanceSource, StartArg, StartPolicy};
pub use experiment::{
    prepare, prepare_all, run_experiment, run_experiment_with_workers, run_prepared,
    workers_from_env, PreparedInstance,
};
pub use report::{BoundReport, GroupSummary, TrialRecord, CSV_COLUMNS};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "VCSP_WORKERS";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Write(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
