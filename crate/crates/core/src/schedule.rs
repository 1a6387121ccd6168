
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Antenna length `d` and step size `delta` together with their attenuation
/// constants and additive floors.
///
/// One update step maps `d <- eta_d * d + d_floor` and
/// `delta <- eta_delta * delta + delta_floor`, so both quantities decay
/// geometrically toward the fixed points `floor / (1 - eta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleState<T> {
    d: T,
    delta: T,
    eta_d: T,
    eta_delta: T,
    d_floor: T,
    delta_floor: T,
}

impl<T: Real> ScheduleState<T> {
    pub fn new(d: T, delta: T, eta_d: T, eta_delta: T, d_floor: T, delta_floor: T) -> Result<Self> {
        let nonneg = |name: &str, v: T| {
            if v.is_finite() && v >= T::zero() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must be finite and nonnegative, got {}",
                    v.to_f64().unwrap_or(f64::NAN)
                )))
            }
        };
        let rate = |name: &str, v: T| {
            if v > T::zero() && v < T::one() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must lie strictly inside (0, 1), got {}",
                    v.to_f64().unwrap_or(f64::NAN)
                )))
            }
        };
        nonneg("d", d)?;
        nonneg("delta", delta)?;
        nonneg("d_floor", d_floor)?;
        nonneg("delta_floor", delta_floor)?;
        rate("eta_d", eta_d)?;
        rate("eta_delta", eta_delta)?;
        Ok(Self {
            d,
            delta,
            eta_d,
            eta_delta,
            d_floor,
            delta_floor,
        })
    }

    /// One attenuation step; all constants unchanged.
    #[must_use]
    pub fn updated(&self) -> Self {
        Self {
            d: self.eta_d * self.d + self.d_floor,
            delta: self.eta_delta * self.delta + self.delta_floor,
            ..*self
        }
    }

    pub fn d(&self) -> T {
        self.d
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn eta_d(&self) -> T {
        self.eta_d
    }

    pub fn eta_delta(&self) -> T {
        self.eta_delta
    }

    pub fn d_floor(&self) -> T {
        self.d_floor
    }

    pub fn delta_floor(&self) -> T {
        self.delta_floor
    }

    /// Limit of repeated updates: `d_floor / (1 - eta_d)`.
    pub fn d_fixed_point(&self) -> T {
        self.d_floor / (T::one() - self.eta_d)
    }

    /// Limit of repeated updates: `delta_floor / (1 - eta_delta)`.
    pub fn delta_fixed_point(&self) -> T {
        self.delta_floor / (T::one() - self.eta_delta)
    }
}

impl<T: Real> Default for ScheduleState<T> {
    /// Defaults sized for the normalized unit cube and a 2000-iteration
    /// budget: `delta = 0.5`, `d = delta / 0.5`, both attenuation rates
    /// 0.995, floors `1e-6`. The step starts at half the box and loses an
    /// order of magnitude roughly every 460 attenuations, which leaves both
    /// a long exploration phase and enough refinement at the end.
    fn default() -> Self {
        Self::new(
            real(1.0),
            real(0.5),
            real(0.995),
            real(0.995),
            real(1e-6),
            real(1e-6),
        )
        .expect("default schedule constants are valid")
    }
}

/// Loop guard: iteration continues while the iteration count is below
/// `max_iterations` and the step size is still above `delta_criterion`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule<T> {
    pub max_iterations: usize,
    pub delta_criterion: T,
}

impl<T: Real> StoppingRule<T> {
    pub fn new(max_iterations: usize, delta_criterion: T) -> Self {
        Self {
            max_iterations,
            delta_criterion,
        }
    }

    pub fn should_continue(&self, iteration: usize, delta: T) -> bool {
        iteration < self.max_iterations && delta > self.delta_criterion
    }
}

impl<T: Real> Default for StoppingRule<T> {
    fn default() -> Self {
        Self::new(2000, real(1e-8))
    }
}
