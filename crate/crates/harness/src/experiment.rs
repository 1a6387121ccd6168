use rayon::prelude::*;

use beetle_core::{run_bas, run_bsas, Algorithm, RunRecord, SearchProblem};

use crate::config::{ExperimentConfig, VariantSpec};
use crate::stats::{summarize, ExperimentSummary};
use crate::HarnessError;

/// Result of one seeded trial. Failures carry the partial record so a broken
/// objective still leaves evidence of how far the run got.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    Success(RunRecord<f64>),
    Failure {
        seed: u64,
        error: String,
        partial: RunRecord<f64>,
    },
}

impl TrialOutcome {
    pub fn record(&self) -> Option<&RunRecord<f64>> {
        match self {
            TrialOutcome::Success(r) => Some(r),
            TrialOutcome::Failure { .. } => None,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            TrialOutcome::Success(r) => r.seed,
            TrialOutcome::Failure { seed, .. } => *seed,
        }
    }
}

/// All trials of one algorithm variant, in trial-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantOutcome {
    pub spec: VariantSpec,
    pub label: String,
    pub trials: Vec<TrialOutcome>,
}

impl VariantOutcome {
    pub fn final_values(&self) -> Vec<f64> {
        self.trials
            .iter()
            .filter_map(|t| t.record().map(|r| r.f_best_final))
            .collect()
    }

    pub fn failure_count(&self) -> usize {
        self.trials.len() - self.final_values().len()
    }
}

/// Outcome of a full experiment: the resolved config, per-variant trial
/// lists, and the cross-variant statistics (recomputable from the trials).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub dataset_id: Option<String>,
    pub variants: Vec<VariantOutcome>,
    pub summary: ExperimentSummary,
}

fn run_trial(
    problem: &SearchProblem<f64>,
    config: &ExperimentConfig,
    spec: &VariantSpec,
    seed: u64,
) -> Result<TrialOutcome, HarnessError> {
    let outcome = match spec.algorithm {
        Algorithm::Bas => run_bas(problem, &config.bas_config()?, seed),
        Algorithm::Bsas => run_bsas(problem, &config.bsas_config(spec.k())?, seed),
    };
    Ok(match outcome {
        Ok(record) => TrialOutcome::Success(record),
        Err(e) => TrialOutcome::Failure {
            seed,
            error: e.source.to_string(),
            partial: *e.partial,
        },
    })
}

/// Runs `trials` seeded runs for every variant; trial `i` uses seed
/// `base_seed + i`, so trials are independent of execution order and the
/// report depends only on the config.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, HarnessError> {
    config.validate()?;
    let (problem, dataset_id) = config.build_problem()?;
    let e = &config.experiment;

    let jobs: Vec<(usize, u64)> = (0..e.variants.len())
        .flat_map(|vi| (0..e.trials as u64).map(move |ti| (vi, e.base_seed.wrapping_add(ti))))
        .collect();

    let execute = || -> Result<Vec<TrialOutcome>, HarnessError> {
        jobs.par_iter()
            .map(|&(vi, seed)| run_trial(&problem, config, &e.variants[vi], seed))
            .collect()
    };

    let outcomes = if e.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(e.workers)
            .build()
            .map_err(|err| HarnessError::Config(format!("cannot build worker pool: {err}")))?;
        pool.install(execute)?
    } else {
        execute()?
    };

    let variants: Vec<VariantOutcome> = e
        .variants
        .iter()
        .enumerate()
        .map(|(vi, spec)| VariantOutcome {
            spec: *spec,
            label: spec.label(),
            trials: outcomes[vi * e.trials..(vi + 1) * e.trials].to_vec(),
        })
        .collect();

    let groups: Vec<(String, Vec<f64>)> = variants
        .iter()
        .map(|v| (v.label.clone(), v.final_values()))
        .collect();
    let summary = summarize(&groups, e.bin_count)?;

    Ok(ExperimentReport {
        config: config.clone(),
        dataset_id,
        variants,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(trials: usize, workers: usize) -> ExperimentConfig {
        ExperimentConfig::from_toml_str(&format!(
            r#"
            [problem]
            kind = "sphere"
            dimension = 2

            [stopping]
            max_iterations = 60

            [experiment]
            variants = [{{ algorithm = "bas" }}, {{ algorithm = "bsas", k = 1 }}, {{ algorithm = "bsas", k = 3 }}]
            trials = {trials}
            base_seed = 100
            bin_count = 8
            workers = {workers}
            "#
        ))
        .unwrap()
    }

    #[test]
    fn one_record_per_variant_and_trial() {
        let report = run_experiment(&small_config(4, 0)).unwrap();
        assert_eq!(report.variants.len(), 3);
        for v in &report.variants {
            assert_eq!(v.trials.len(), 4);
            assert_eq!(v.failure_count(), 0);
            for (i, t) in v.trials.iter().enumerate() {
                assert_eq!(t.seed(), 100 + i as u64);
            }
        }
        assert_eq!(report.summary.variants.len(), 3);
        assert_eq!(report.summary.variants[0].count, 4);
    }

    #[test]
    fn reports_are_identical_across_worker_counts() {
        let strip = |mut report: ExperimentReport| {
            for v in &mut report.variants {
                for t in &mut v.trials {
                    if let TrialOutcome::Success(r) = t {
                        r.wall_time_ms = 0;
                    }
                }
            }
            report
        };
        let serial = strip(run_experiment(&small_config(3, 1)).unwrap());
        let parallel = strip(run_experiment(&small_config(3, 2)).unwrap());
        // Only the worker knob differs; trial outcomes and statistics match.
        assert_eq!(serial.variants, parallel.variants);
        assert_eq!(serial.summary, parallel.summary);
    }

    #[test]
    fn singleton_experiment_has_degenerate_statistics() {
        let mut config = small_config(1, 0);
        config.experiment.variants.truncate(1);
        let report = run_experiment(&config).unwrap();
        let stats = &report.summary.variants[0];
        let only = report.variants[0].trials[0].record().unwrap().f_best_final;
        assert_eq!(stats.mean, only);
        assert_eq!(stats.std_dev, 0.0);
        assert_eq!(stats.min, only);
        assert_eq!(stats.max, only);
    }

    #[test]
    fn trajectories_are_monotone_in_every_trial() {
        let report = run_experiment(&small_config(3, 0)).unwrap();
        for v in &report.variants {
            for t in &v.trials {
                let r = t.record().unwrap();
                for w in r.f_best_trajectory.windows(2) {
                    assert!(w[1] <= w[0]);
                }
                assert_eq!(r.k, v.spec.k());
            }
        }
    }
}
