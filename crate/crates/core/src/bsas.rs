use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{clamp_unit, SearchProblem};
use crate::record::{Algorithm, RunError, RunRecord};
use crate::rng::TrialRng;
use crate::scalar::Real;
use crate::schedule::{ScheduleState, StoppingRule};
use crate::step::{antenna_probes, detect_step_with, BeetleIncumbent, SignConvention};

/// How each beetle turns its two antenna readings into a candidate position.
///
/// `DetectStep` applies the detection rule (one candidate per beetle, three
/// evaluations each). `BestAntenna` adopts the better antenna tip directly
/// (two evaluations each) and is kept for experimentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateRule {
    #[default]
    DetectStep,
    BestAntenna,
}

/// Configuration of the swarm search: `k` beetles probe `k` random
/// directions per iteration, the position moves only on improvement, and the
/// schedule attenuates only when no beetle improved and a coin draw exceeds
/// `p_delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsasConfig<T> {
    pub k: usize,
    pub p_delta: T,
    pub schedule: ScheduleState<T>,
    pub stopping: StoppingRule<T>,
    pub sign_convention: SignConvention,
    pub candidate_rule: CandidateRule,
}

impl<T: Real> BsasConfig<T> {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("beetle count k must be at least 1".into()));
        }
        if !(self.p_delta >= T::zero() && self.p_delta <= T::one()) {
            return Err(Error::InvalidConfig(format!(
                "p_delta must lie in [0, 1], got {}",
                self.p_delta.to_f64().unwrap_or(f64::NAN)
            )));
        }
        if self.schedule.delta() <= self.stopping.delta_criterion {
            return Err(Error::InvalidConfig(format!(
                "initial delta {} must exceed delta_criterion {}",
                self.schedule.delta().to_f64().unwrap_or(f64::NAN),
                self.stopping.delta_criterion.to_f64().unwrap_or(f64::NAN),
            )));
        }
        Ok(())
    }
}

impl<T: Real> Default for BsasConfig<T> {
    /// One beetle, `p_delta = 0.2`, default schedule and stopping rule.
    fn default() -> Self {
        Self {
            k: 1,
            p_delta: crate::scalar::real(0.2),
            schedule: ScheduleState::default(),
            stopping: StoppingRule::default(),
            sign_convention: SignConvention::default(),
            candidate_rule: CandidateRule::default(),
        }
    }
}

/// What one BSAS iteration did.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsasIterationOutcome<T> {
    /// Whether some beetle found a strictly better position (in which case
    /// the incumbent moved there and the schedule stayed fixed).
    pub improved: bool,
    /// Whether the schedule attenuated this iteration. Can only be true when
    /// `improved` is false and the coin exceeded `p_delta`.
    pub schedule_updated: bool,
    /// The coin drawn on the non-improving branch, `None` on improvement.
    pub coin: Option<T>,
    /// Objective evaluations spent: `3k` under `DetectStep` (`2k` under
    /// `BestAntenna`) minus any tie-stationary candidates that needed no
    /// re-evaluation.
    pub evaluations: usize,
}

/// One iteration of the swarm search, drawing the `k` directions from the
/// per-beetle substreams of `rng`.
pub fn bsas_iteration<T: Real>(
    incumbent: &mut BeetleIncumbent<T>,
    schedule: &mut ScheduleState<T>,
    config: &BsasConfig<T>,
    problem: &SearchProblem<T>,
    rng: &mut TrialRng,
) -> Result<BsasIterationOutcome<T>> {
    config.validate()?;
    let n = problem.dimension();
    let directions: Vec<Vec<T>> = (0..config.k)
        .map(|i| rng.direction(i, n))
        .collect::<Result<_>>()?;
    bsas_iteration_with_directions(incumbent, schedule, config, problem, &directions, rng)
}

/// [`bsas_iteration`] with caller-supplied directions (one per beetle; the
/// coin is still drawn from `rng` when needed).
pub fn bsas_iteration_with_directions<T: Real>(
    incumbent: &mut BeetleIncumbent<T>,
    schedule: &mut ScheduleState<T>,
    config: &BsasConfig<T>,
    problem: &SearchProblem<T>,
    directions: &[Vec<T>],
    rng: &mut TrialRng,
) -> Result<BsasIterationOutcome<T>> {
    if directions.is_empty() {
        return Err(Error::InvalidConfig("at least one direction required".into()));
    }

    let mut evaluations = 0usize;
    // (candidate, value); strict '<' keeps the lowest beetle index on ties.
    let mut best: Option<(Vec<T>, T)> = None;

    for b in directions {
        let (mut right, mut left) = antenna_probes(&incumbent.x, schedule.d(), b)?;
        clamp_unit(&mut right);
        clamp_unit(&mut left);
        let f_r = problem.evaluate_normalized(&right)?;
        let f_l = problem.evaluate_normalized(&left)?;
        evaluations += 2;

        let (candidate, f_candidate) = match config.candidate_rule {
            CandidateRule::DetectStep => {
                let mut candidate = detect_step_with(
                    config.sign_convention,
                    &incumbent.x,
                    schedule.delta(),
                    b,
                    f_r,
                    f_l,
                )?;
                clamp_unit(&mut candidate);
                if candidate == incumbent.x {
                    // Stationary candidate: when the position is the current
                    // best its value is already known and cannot win a strict
                    // improvement, so skip the evaluation.
                    if incumbent.x == incumbent.x_best {
                        (candidate, incumbent.f_best)
                    } else {
                        let f = problem.evaluate_normalized(&candidate)?;
                        evaluations += 1;
                        (candidate, f)
                    }
                } else {
                    let f = problem.evaluate_normalized(&candidate)?;
                    evaluations += 1;
                    (candidate, f)
                }
            }
            CandidateRule::BestAntenna => {
                if f_r <= f_l {
                    (right, f_r)
                } else {
                    (left, f_l)
                }
            }
        };

        let replace = match &best {
            Some((_, f)) => f_candidate < *f,
            None => true,
        };
        if replace {
            best = Some((candidate, f_candidate));
        }
    }

    let (x_min, f_min) = best.expect("at least one candidate");
    if f_min < incumbent.f_best {
        incumbent.f_best = f_min;
        incumbent.x_best = x_min.clone();
        incumbent.x = x_min;
        Ok(BsasIterationOutcome {
            improved: true,
            schedule_updated: false,
            coin: None,
            evaluations,
        })
    } else {
        let coin: T = rng.coin();
        let schedule_updated = coin > config.p_delta;
        if schedule_updated {
            *schedule = schedule.updated();
        }
        Ok(BsasIterationOutcome {
            improved: false,
            schedule_updated,
            coin: Some(coin),
            evaluations,
        })
    }
}

/// Runs BSAS from a seeded uniform starting point until the stopping rule
/// fires.
pub fn run_bsas<T: Real>(
    problem: &SearchProblem<T>,
    config: &BsasConfig<T>,
    seed: u64,
) -> Result<RunRecord<T>, RunError<T>> {
    let fail = |source| RunError {
        partial: Box::new(RunRecord::empty(Algorithm::Bsas, config.k, seed)),
        source,
    };
    config.validate().map_err(&fail)?;

    let start = Instant::now();
    let n = problem.dimension();
    let mut rng = TrialRng::new(seed, config.k);
    let x0: Vec<T> = rng.initial_position(n);
    let f0 = problem.evaluate_normalized(&x0).map_err(&fail)?;

    let mut incumbent = BeetleIncumbent::new(x0, f0);
    let mut schedule = config.schedule;
    let mut trajectory = vec![f0];
    let mut evaluations = 1usize;
    let mut improving = 0usize;
    let mut schedule_updates = 0usize;
    let mut iterations = 0usize;

    let record = |incumbent: &BeetleIncumbent<T>,
                  trajectory: Vec<T>,
                  iterations,
                  evaluations,
                  improving,
                  schedule_updates,
                  start: Instant| RunRecord {
        algorithm: Algorithm::Bsas,
        k: config.k,
        seed,
        f_best_final: incumbent.f_best,
        f_best_trajectory: trajectory,
        x_best: problem.denormalize(&incumbent.x_best),
        iterations,
        evaluations,
        improving_iterations: improving,
        schedule_updates,
        wall_time_ms: start.elapsed().as_millis() as u64,
    };

    while config.stopping.should_continue(iterations, schedule.delta()) {
        match bsas_iteration(&mut incumbent, &mut schedule, config, problem, &mut rng) {
            Ok(outcome) => {
                iterations += 1;
                evaluations += outcome.evaluations;
                if outcome.improved {
                    improving += 1;
                }
                if outcome.schedule_updated {
                    schedule_updates += 1;
                }
                trajectory.push(incumbent.f_best);
            }
            Err(source) => {
                return Err(RunError {
                    partial: Box::new(record(
                        &incumbent,
                        trajectory,
                        iterations,
                        evaluations,
                        improving,
                        schedule_updates,
                        start,
                    )),
                    source,
                });
            }
        }
    }

    Ok(record(
        &incumbent,
        trajectory,
        iterations,
        evaluations,
        improving,
        schedule_updates,
        start,
    ))
}
