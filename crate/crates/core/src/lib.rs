//! Beetle antennae search optimizers.
//!
//! Two derivative-free minimizers built from the same primitives:
//!
//! - BAS ([`run_bas`]): the original single-beetle search. Every iteration
//!   probes the objective at two antenna positions along a random direction,
//!   moves toward the better reading, and attenuates both the antenna length
//!   and the step size unconditionally.
//! - BSAS ([`run_bsas`]): the swarm variant. `k` beetles probe `k`
//!   directions per iteration; the position moves only when some beetle
//!   strictly improves the incumbent, and the schedule attenuates only on
//!   non-improving iterations that pass a probability gate `p_delta`.
//!
//! Searches run in normalized `[0, 1]^n` coordinates internally and hand
//! physical coordinates to the objective, so a single scalar step size stays
//! meaningful when components differ by orders of magnitude (the RC thermal
//! parameters in [`benchmarks`] span nine).
//!
//! All kernels are generic over the scalar type through [`Real`]; the `*64`
//! aliases below cover the common double-precision case.

mod bas;
mod bsas;
mod error;
mod problem;
mod record;
mod rng;
mod scalar;
mod schedule;
mod step;

pub mod benchmarks;

pub use bas::{bas_step, bas_step_with_direction, run_bas, BasConfig, BasStepOutcome};
pub use bsas::{
    bsas_iteration, bsas_iteration_with_directions, run_bsas, BsasConfig, BsasIterationOutcome,
    CandidateRule,
};
pub use error::{Error, Result};
pub use problem::{clamp_unit, DynObjective, SearchProblem};
pub use record::{Algorithm, RunError, RunRecord};
pub use rng::{sample_unit_direction, RngStream, TrialRng};
pub use scalar::Real;
pub use schedule::{ScheduleState, StoppingRule};
pub use step::{antenna_probes, detect_step, detect_step_with, BeetleIncumbent, SignConvention};

pub type SearchProblem64 = SearchProblem<f64>;
pub type ScheduleState64 = ScheduleState<f64>;
pub type StoppingRule64 = StoppingRule<f64>;
pub type BeetleIncumbent64 = BeetleIncumbent<f64>;
pub type BasConfig64 = BasConfig<f64>;
pub type BsasConfig64 = BsasConfig<f64>;
pub type RunRecord64 = RunRecord<f64>;
pub type RcParameters64 = benchmarks::rc::RcParameters<f64>;
pub type RcDataset64 = benchmarks::rc::RcDataset<f64>;
