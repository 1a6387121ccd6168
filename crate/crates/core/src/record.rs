use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::scalar::Real;

/// Which search algorithm produced a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Bas,
    Bsas,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Bas => write!(f, "bas"),
            Algorithm::Bsas => write!(f, "bsas"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "bas" => Ok(Algorithm::Bas),
            "bsas" => Ok(Algorithm::Bsas),
            other => Err(Error::InvalidConfig(format!(
                "unknown algorithm '{other}' (expected 'bas' or 'bsas')"
            ))),
        }
    }
}

/// Everything a single optimization run reports back.
///
/// `f_best_trajectory[t]` is the incumbent value after `t` iterations (entry
/// 0 is the value at the starting point), so it is non-increasing by
/// construction. `x_best` is in physical (denormalized) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord<T> {
    pub algorithm: Algorithm,
    pub k: usize,
    pub seed: u64,
    pub f_best_final: T,
    pub f_best_trajectory: Vec<T>,
    pub x_best: Vec<T>,
    pub iterations: usize,
    pub evaluations: usize,
    pub improving_iterations: usize,
    pub schedule_updates: usize,
    pub wall_time_ms: u64,
}

impl<T: Real> RunRecord<T> {
    /// Placeholder for a run that failed before evaluating anything.
    pub(crate) fn empty(algorithm: Algorithm, k: usize, seed: u64) -> Self {
        Self {
            algorithm,
            k,
            seed,
            f_best_final: T::infinity(),
            f_best_trajectory: Vec::new(),
            x_best: Vec::new(),
            iterations: 0,
            evaluations: 0,
            improving_iterations: 0,
            schedule_updates: 0,
            wall_time_ms: 0,
        }
    }
}

/// A failed run, carrying whatever bookkeeping had accumulated when the
/// objective error surfaced.
#[derive(Debug, Error)]
#[error("{} run (seed {}) failed after {} iterations: {source}",
    partial.algorithm, partial.seed, partial.iterations)]
pub struct RunError<T: Real> {
    pub partial: Box<RunRecord<T>>,
    #[source]
    pub source: Error,
}
