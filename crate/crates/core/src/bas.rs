use std::time::Instant;


use crate::error::{Error, Result};
use crate::problem::{clamp_unit, SearchProblem};
use crate::record::{Algorithm, RunError, RunRecord};
use crate::rng::TrialRng;
use crate::scalar::Real;
use crate::schedule::{ScheduleState, StoppingRule};
use crate::step::{antenna_probes, detect_step_with, BeetleIncumbent, SignConvention};

/// Configuration of the original single-beetle search: one random direction
/// per iteration, unconditional position and schedule updates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasConfig<T> {
    pub schedule: ScheduleState<T>,
    pub stopping: StoppingRule<T>,
    pub sign_convention: SignConvention,
}

impl<T: Real> BasConfig<T> {
    pub fn validate(&self) -> Result<()> {
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

impl<T: Real> Default for BasConfig<T> {
    fn default() -> Self {
        Self {
            schedule: ScheduleState::default(),
            stopping: StoppingRule::default(),
            sign_convention: SignConvention::default(),
        }
    }
}

/// What one BAS iteration did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasStepOutcome {
    /// Objective evaluations spent: 3, or 2 when the detection step left the
    /// position unchanged (tie or boundary pin) and no re-evaluation was
    /// needed.
    pub evaluations: usize,
    /// Whether the position actually changed.
    pub moved: bool,
    /// Whether the incumbent improved.
    pub improved: bool,
}

/// One BAS iteration in normalized coordinates: draw a direction, probe both
/// antennae, move by the detection rule regardless of improvement, then
/// attenuate the schedule unconditionally.
pub fn bas_step<T: Real>(
    incumbent: &mut BeetleIncumbent<T>,
    schedule: &mut ScheduleState<T>,
    problem: &SearchProblem<T>,
    convention: SignConvention,
    rng: &mut TrialRng,
) -> Result<BasStepOutcome> {
    let b = rng.direction(0, problem.dimension())?;
    bas_step_with_direction(incumbent, schedule, problem, convention, &b)
}

/// [`bas_step`] with the direction supplied by the caller.
pub fn bas_step_with_direction<T: Real>(
    incumbent: &mut BeetleIncumbent<T>,
    schedule: &mut ScheduleState<T>,
    problem: &SearchProblem<T>,
    convention: SignConvention,
    direction: &[T],
) -> Result<BasStepOutcome> {
    let (mut right, mut left) = antenna_probes(&incumbent.x, schedule.d(), direction)?;
    clamp_unit(&mut right);
    clamp_unit(&mut left);
    let f_r = problem.evaluate_normalized(&right)?;
    let f_l = problem.evaluate_normalized(&left)?;

    let mut next = detect_step_with(convention, &incumbent.x, schedule.delta(), direction, f_r, f_l)?;
    clamp_unit(&mut next);

    let moved = next != incumbent.x;
    let mut evaluations = 2;
    let mut improved = false;
    if moved {
        // A stationary step needs no re-evaluation: its value was already
        // offered to the incumbent when the beetle arrived there.
        let f_next = problem.evaluate_normalized(&next)?;
        evaluations += 1;
        improved = incumbent.offer(&next, f_next);
        incumbent.x = next;
    }

    *schedule = schedule.updated();
    Ok(BasStepOutcome {
        evaluations,
        moved,
        improved,
    })
}

/// Runs BAS from a seeded uniform starting point until the stopping rule
/// fires. On an objective error the partial record accumulated so far is
/// returned inside the error.
pub fn run_bas<T: Real>(
    problem: &SearchProblem<T>,
    config: &BasConfig<T>,
    seed: u64,
) -> Result<RunRecord<T>, RunError<T>> {
    let fail = |source| RunError {
        partial: Box::new(RunRecord::empty(Algorithm::Bas, 1, seed)),
        source,
    };
    config.validate().map_err(&fail)?;

    let start = Instant::now();
    let n = problem.dimension();
    let mut rng = TrialRng::new(seed, 1);
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
        algorithm: Algorithm::Bas,
        k: 1,
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
        match bas_step(&mut incumbent, &mut schedule, problem, config.sign_convention, &mut rng) {
            Ok(outcome) => {
                iterations += 1;
                evaluations += outcome.evaluations;
                schedule_updates += 1;
                if outcome.improved {
                    improving += 1;
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
