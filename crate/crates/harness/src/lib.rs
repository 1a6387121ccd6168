//! Experiment harness for the beetle antennae search optimizers: config
//! parsing, seeded multi-trial experiments, distribution statistics and the
//! CSV/JSON output formats behind the `beetle-opt` CLI.

use std::path::PathBuf;

use thiserror::Error;

pub mod config;
pub mod experiment;
pub mod output;
pub mod stats;

pub use config::{ExperimentConfig, GenDataConfig, ProblemKind, VariantSpec};
pub use experiment::{run_experiment, ExperimentReport, TrialOutcome, VariantOutcome};
pub use output::{read_trials_csv, summarize_trials_csv, write_outputs};
pub use stats::{pooled_standard_error, summarize, ExperimentSummary, VariantStats};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),

    #[error("failed to parse {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] beetle_core::Error),
}
