use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Number of identified parameters: three initial temperatures, three
/// capacitances, three resistances.
pub const RC_PARAMETER_COUNT: usize = 9;

/// Parameters of the one-zone lumped thermal network, in canonical vector
/// order `[T_e0, T_in0, T_m0, C1, C_in, C_m, R1, R2, R3]`.
///
/// Temperatures are in degC, capacitances in J/K, resistances in K/W.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RcParameters<T> {
    pub t_e0: T,
    pub t_in0: T,
    pub t_m0: T,
    pub c1: T,
    pub c_in: T,
    pub c_m: T,
    pub r1: T,
    pub r2: T,
    pub r3: T,
}

impl<T: Real> RcParameters<T> {
    pub fn to_vector(&self) -> [T; RC_PARAMETER_COUNT] {
        [
            self.t_e0, self.t_in0, self.t_m0, self.c1, self.c_in, self.c_m, self.r1, self.r2,
            self.r3,
        ]
    }

    pub fn from_vector(x: &[T]) -> Result<Self> {
        if x.len() != RC_PARAMETER_COUNT {
            return Err(Error::LengthMismatch {
                expected: RC_PARAMETER_COUNT,
                got: x.len(),
            });
        }
        Ok(Self {
            t_e0: x[0],
            t_in0: x[1],
            t_m0: x[2],
            c1: x[3],
            c_in: x[4],
            c_m: x[5],
            r1: x[6],
            r2: x[7],
            r3: x[8],
        })
    }

    /// Capacitances and resistances must be strictly positive; everything
    /// must be finite.
    pub fn validate(&self) -> Result<()> {
        let check_pos = |name: &str, v: T| {
            if v.is_finite() && v > T::zero() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be finite and strictly positive, got {}",
                    v.to_f64().unwrap_or(f64::NAN)
                )))
            }
        };
        let check_finite = |name: &str, v: T| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be finite")))
            }
        };
        check_finite("t_e0", self.t_e0)?;
        check_finite("t_in0", self.t_in0)?;
        check_finite("t_m0", self.t_m0)?;
        check_pos("c1", self.c1)?;
        check_pos("c_in", self.c_in)?;
        check_pos("c_m", self.c_m)?;
        check_pos("r1", self.r1)?;
        check_pos("r2", self.r2)?;
        check_pos("r3", self.r3)
    }

    pub fn initial_state(&self) -> RcState<T> {
        RcState {
            t_e: self.t_e0,
            t_in: self.t_in0,
            t_m: self.t_m0,
        }
    }
}

/// Envelope, indoor-air and internal-mass temperatures (degC).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RcState<T> {
    pub t_e: T,
    pub t_in: T,
    pub t_m: T,
}

/// Exogenous drivers at one sample instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForcingSample<T> {
    /// Outdoor temperature (degC).
    pub t_out: T,
    /// Internal heat gains (W).
    pub q_in: T,
    /// Cooling power (W, nonpositive when cooling).
    pub q_c: T,
    /// Transmitted solar radiation (W).
    pub q_solar: T,
}

/// Uniformly sampled driver series. Construction checks that all series share
/// one length and that timestamps increase with constant spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct RcForcing<T> {
    timestamps: Vec<T>,
    t_out: Vec<T>,
    q_in: Vec<T>,
    q_c: Vec<T>,
    q_solar: Vec<T>,
}

impl<T: Real> RcForcing<T> {
    pub fn new(
        timestamps: Vec<T>,
        t_out: Vec<T>,
        q_in: Vec<T>,
        q_c: Vec<T>,
        q_solar: Vec<T>,
    ) -> Result<Self> {
        let n = timestamps.len();
        if n < 2 {
            return Err(Error::InvalidParameter(
                "forcing needs at least two samples".into(),
            ));
        }
        for (name, series) in [
            ("T_out", &t_out),
            ("Q_in", &q_in),
            ("Q_c", &q_c),
            ("Q_solar", &q_solar),
        ] {
            if series.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "{name} has {} samples, timestamps have {n}",
                    series.len()
                )));
            }
        }
        let h = timestamps[1] - timestamps[0];
        if !(h.is_finite() && h > T::zero()) {
            return Err(Error::InvalidParameter(
                "timestamps must be strictly increasing".into(),
            ));
        }
        let tol = h * real(1e-6);
        for w in timestamps.windows(2) {
            let step = w[1] - w[0];
            if !(step.is_finite() && step > T::zero()) || (step - h).abs() > tol {
                return Err(Error::InvalidParameter(
                    "timestamps must be uniformly spaced".into(),
                ));
            }
        }
        Ok(Self {
            timestamps,
            t_out,
            q_in,
            q_c,
            q_solar,
        })
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least two samples
    }

    /// Sample spacing in seconds.
    pub fn step(&self) -> T {
        self.timestamps[1] - self.timestamps[0]
    }

    pub fn timestamps(&self) -> &[T] {
        &self.timestamps
    }

    pub fn t_out(&self) -> &[T] {
        &self.t_out
    }

    pub fn q_in(&self) -> &[T] {
        &self.q_in
    }

    pub fn q_c(&self) -> &[T] {
        &self.q_c
    }

    pub fn q_solar(&self) -> &[T] {
        &self.q_solar
    }

    pub fn sample(&self, i: usize) -> ForcingSample<T> {
        ForcingSample {
            t_out: self.t_out[i],
            q_in: self.q_in[i],
            q_c: self.q_c[i],
            q_solar: self.q_solar[i],
        }
    }
}

/// Forcing series plus the observed indoor temperature, with the generating
/// parameters attached when the data is synthetic.
#[derive(Debug, Clone, PartialEq)]
pub struct RcDataset<T> {
    pub forcing: RcForcing<T>,
    pub t_in_obs: Vec<T>,
    pub truth: Option<RcParameters<T>>,
}

impl<T: Real> RcDataset<T> {
    pub fn new(
        forcing: RcForcing<T>,
        t_in_obs: Vec<T>,
        truth: Option<RcParameters<T>>,
    ) -> Result<Self> {
        if t_in_obs.len() != forcing.len() {
            return Err(Error::InvalidParameter(format!(
                "T_in_obs has {} samples, forcing has {}",
                t_in_obs.len(),
                forcing.len()
            )));
        }
        Ok(Self {
            forcing,
            t_in_obs,
            truth,
        })
    }

    pub fn len(&self) -> usize {
        self.forcing.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[inline]
fn derivatives_unchecked<T: Real>(
    state: &[T; 3],
    p: &RcParameters<T>,
    f: &ForcingSample<T>,
) -> [T; 3] {
    let [t_e, t_in, t_m] = *state;
    let d_te = (f.t_out - t_e) / (p.r1 * p.c1);
    let d_tin = ((t_e - t_in) / p.r2 - (t_in - t_m) / p.r3 + f.q_in + f.q_c + f.q_solar) / p.c_in;
    let d_tm = (t_in - t_m) / (p.r3 * p.c_m);
    [d_te, d_tin, d_tm]
}

/// Time derivatives of the three node temperatures under the given forcing,
/// from the heat balances of the envelope, indoor-air and internal-mass
/// nodes.
pub fn rc_derivatives<T: Real>(
    state: &RcState<T>,
    params: &RcParameters<T>,
    forcing: &ForcingSample<T>,
) -> Result<RcState<T>> {
    params.validate()?;
    let [t_e, t_in, t_m] =
        derivatives_unchecked(&[state.t_e, state.t_in, state.t_m], params, forcing);
    Ok(RcState { t_e, t_in, t_m })
}

/// One classical fourth-order Runge-Kutta step for an autonomous system.
/// Forcing held constant across a step (zero-order hold) keeps the system
/// autonomous within the step, which is exactly how the simulation below
/// uses it.
pub fn rk4_step<T: Real, const N: usize>(
    y: &[T; N],
    h: T,
    f: impl Fn(&[T; N]) -> [T; N],
) -> [T; N] {
    let two = real::<T>(2.0);
    let six = real::<T>(6.0);
    let half_h = h / two;

    let k1 = f(y);
    let mut y2 = *y;
    for i in 0..N {
        y2[i] = y[i] + half_h * k1[i];
    }
    let k2 = f(&y2);
    let mut y3 = *y;
    for i in 0..N {
        y3[i] = y[i] + half_h * k2[i];
    }
    let k3 = f(&y3);
    let mut y4 = *y;
    for i in 0..N {
        y4[i] = y[i] + h * k3[i];
    }
    let k4 = f(&y4);

    let mut out = *y;
    for i in 0..N {
        out[i] = y[i] + h / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
    }
    out
}

/// Integrates the thermal network over the forcing series and returns the
/// simulated indoor temperature at every timestamp (first entry is `T_in0`).
///
/// Forcing uses the left sample of each interval for all four stages
/// (zero-order hold).
pub fn rk4_simulate<T: Real>(params: &RcParameters<T>, forcing: &RcForcing<T>) -> Result<Vec<T>> {
    params.validate()?;
    let h = forcing.step();
    let mut state = [params.t_e0, params.t_in0, params.t_m0];
    let mut t_in = Vec::with_capacity(forcing.len());
    t_in.push(state[1]);
    for i in 0..forcing.len() - 1 {
        let drivers = forcing.sample(i);
        state = rk4_step(&state, h, |y| derivatives_unchecked(y, params, &drivers));
        t_in.push(state[1]);
    }
    Ok(t_in)
}

/// Penalty returned by [`mae_objective`] for parameter vectors that decode to
/// an invalid or numerically diverging model.
pub const DEFAULT_INVALID_PENALTY: f64 = 1e6;

/// Mean absolute error (degC) between the simulated and observed indoor
/// temperature, with the default penalty for invalid parameters.
pub fn mae_objective<T: Real>(x_pars: &[T], dataset: &RcDataset<T>) -> Result<T> {
    mae_objective_with_penalty(x_pars, dataset, real(DEFAULT_INVALID_PENALTY))
}

/// [`mae_objective`] with an explicit penalty value.
///
/// Invalid parameters (nonpositive capacitance or resistance) and simulations
/// that leave the finite range yield `penalty` instead of an error, so the
/// search can traverse near-boundary regions.
pub fn mae_objective_with_penalty<T: Real>(
    x_pars: &[T],
    dataset: &RcDataset<T>,
    penalty: T,
) -> Result<T> {
    let params = RcParameters::from_vector(x_pars)?;
    if params.validate().is_err() {
        return Ok(penalty);
    }
    let sim = rk4_simulate(&params, &dataset.forcing)?;
    let n = T::from_usize(sim.len()).expect("sample count fits in scalar");
    let total = sim
        .iter()
        .zip(&dataset.t_in_obs)
        .fold(T::zero(), |acc, (&s, &o)| acc + (s - o).abs());
    let mae = total / n;
    if mae.is_finite() {
        Ok(mae)
    } else {
        Ok(penalty)
    }
}
