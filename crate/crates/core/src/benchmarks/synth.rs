use serde::{Deserialize, Serialize};

use crate::benchmarks::rc::{rk4_simulate, RcDataset, RcForcing, RcParameters};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::scalar::{real, Real};

const SECONDS_PER_HOUR: f64 = 3600.0;
const SECONDS_PER_DAY: f64 = 86_400.0;
// Occupancy window drives internal gains and cooling; solar gains follow a
// half-sine over the daylight window.
const OCCUPIED_START_HOUR: f64 = 8.0;
const OCCUPIED_END_HOUR: f64 = 20.0;
const SOLAR_START_HOUR: f64 = 6.0;
const SOLAR_END_HOUR: f64 = 18.0;

/// Shape of the generated forcing series and observation noise.
///
/// Outdoor temperature is a diurnal cosine peaking at `t_out_peak_hour`;
/// internal gains jump from `q_in_base_w` to `q_in_base_w + q_in_occupied_w`
/// during occupied hours; cooling power `q_cool_occupied_w` (nonpositive)
/// applies during occupied hours; solar gain is a half-sine over daylight
/// hours with peak `q_solar_peak_w`. Observation noise is i.i.d. Gaussian on
/// the indoor temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec<T> {
    pub duration_s: T,
    pub step_s: T,
    pub t_out_mean: T,
    pub t_out_amplitude: T,
    pub t_out_peak_hour: T,
    pub q_in_base_w: T,
    pub q_in_occupied_w: T,
    pub q_cool_occupied_w: T,
    pub q_solar_peak_w: T,
    pub noise_std_c: T,
    pub seed: u64,
}

impl<T: Real> SyntheticSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_s.is_finite() && self.step_s > T::zero()) {
            return Err(Error::InvalidParameter("step_s must be positive".into()));
        }
        if !(self.duration_s.is_finite() && self.duration_s >= self.step_s) {
            return Err(Error::InvalidParameter(
                "duration_s must cover at least one step".into(),
            ));
        }
        if !(self.noise_std_c.is_finite() && self.noise_std_c >= T::zero()) {
            return Err(Error::InvalidParameter(
                "noise_std_c must be nonnegative".into(),
            ));
        }
        if !(self.q_cool_occupied_w.is_finite() && self.q_cool_occupied_w <= T::zero()) {
            return Err(Error::InvalidParameter(
                "q_cool_occupied_w must be nonpositive (cooling)".into(),
            ));
        }
        for (name, v) in [
            ("t_out_mean", self.t_out_mean),
            ("t_out_amplitude", self.t_out_amplitude),
            ("t_out_peak_hour", self.t_out_peak_hour),
            ("q_in_base_w", self.q_in_base_w),
            ("q_in_occupied_w", self.q_in_occupied_w),
            ("q_solar_peak_w", self.q_solar_peak_w),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        Ok(())
    }

    /// Number of samples: one at t = 0 plus one per full step.
    pub fn sample_count(&self) -> usize {
        let steps = (self.duration_s / self.step_s)
            .floor()
            .to_f64()
            .unwrap_or(0.0) as usize;
        steps + 1
    }
}

impl<T: Real> Default for SyntheticSpec<T> {
    /// Three days at 300 s spacing, cooling-season drivers, no noise.
    fn default() -> Self {
        Self {
            duration_s: real(3.0 * SECONDS_PER_DAY),
            step_s: real(300.0),
            t_out_mean: real(30.0),
            t_out_amplitude: real(5.0),
            t_out_peak_hour: real(15.0),
            q_in_base_w: real(150.0),
            q_in_occupied_w: real(450.0),
            q_cool_occupied_w: real(-1800.0),
            q_solar_peak_w: real(700.0),
            noise_std_c: T::zero(),
            seed: 0,
        }
    }
}

/// Physically plausible default ground truth for a one-zone building in
/// cooling season.
pub fn default_truth<T: Real>() -> RcParameters<T> {
    RcParameters {
        t_e0: real(28.0),
        t_in0: real(26.0),
        t_m0: real(26.0),
        c1: real(3e6),
        c_in: real(5e5),
        c_m: real(8e6),
        r1: real(5e-3),
        r2: real(5e-3),
        r3: real(2e-3),
    }
}

fn forcing_series<T: Real>(spec: &SyntheticSpec<T>) -> Result<RcForcing<T>> {
    let n = spec.sample_count();
    let mut timestamps = Vec::with_capacity(n);
    let mut t_out = Vec::with_capacity(n);
    let mut q_in = Vec::with_capacity(n);
    let mut q_c = Vec::with_capacity(n);
    let mut q_solar = Vec::with_capacity(n);

    let two_pi = real::<T>(2.0 * std::f64::consts::PI);
    let pi = real::<T>(std::f64::consts::PI);
    let hours_per_day = real::<T>(24.0);
    let per_hour = real::<T>(SECONDS_PER_HOUR);

    for i in 0..n {
        let t = T::from_usize(i).expect("sample index fits in scalar") * spec.step_s;
        let hour = (t / per_hour) % hours_per_day;

        let phase = two_pi * (hour - spec.t_out_peak_hour) / hours_per_day;
        let outdoor = spec.t_out_mean + spec.t_out_amplitude * phase.cos();

        let occupied = hour >= real(OCCUPIED_START_HOUR) && hour < real(OCCUPIED_END_HOUR);
        let gains = if occupied {
            spec.q_in_base_w + spec.q_in_occupied_w
        } else {
            spec.q_in_base_w
        };
        let cooling = if occupied {
            spec.q_cool_occupied_w
        } else {
            T::zero()
        };

        let daylight = hour >= real(SOLAR_START_HOUR) && hour < real(SOLAR_END_HOUR);
        let solar = if daylight {
            let span = real::<T>(SOLAR_END_HOUR - SOLAR_START_HOUR);
            spec.q_solar_peak_w * (pi * (hour - real(SOLAR_START_HOUR)) / span).sin()
        } else {
            T::zero()
        };

        timestamps.push(t);
        t_out.push(outdoor);
        q_in.push(gains);
        q_c.push(cooling);
        q_solar.push(solar);
    }

    RcForcing::new(timestamps, t_out, q_in, q_c, q_solar)
}

/// Builds a seeded synthetic identification dataset: generates the forcing
/// series, simulates the indoor temperature under `truth`, and perturbs it
/// with Gaussian observation noise.
pub fn generate_synthetic_dataset<T: Real>(
    truth: &RcParameters<T>,
    spec: &SyntheticSpec<T>,
) -> Result<RcDataset<T>> {
    truth.validate()?;
    spec.validate()?;

    let forcing = forcing_series(spec)?;
    let sim = rk4_simulate(truth, &forcing)?;

    let mut rng = RngStream::new(spec.seed);
    let t_in_obs = sim
        .into_iter()
        .map(|v| v + spec.noise_std_c * rng.standard_normal())
        .collect();

    RcDataset::new(forcing, t_in_obs, Some(*truth))
}
