use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Direction of the detection step relative to the antenna comparison.
///
/// `TowardBetter` moves toward the antenna with the lower objective value
/// (`x - delta * b * sign(f_r - f_l)`), which is what minimization needs.
/// `AsPrinted` flips the sign (`x + delta * b * sign(f_r - f_l)`) and is kept
/// available for experimentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    #[default]
    TowardBetter,
    AsPrinted,
}

/// Mathematical sign: -1, 0 or +1. Ties (and incomparable values such as
/// NaN) map to 0, which leaves the beetle stationary.
fn sign_of<T: Real>(v: T) -> T {
    if v > T::zero() {
        T::one()
    } else if v < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// Virtual sensor positions `x_r = x + d*b` and `x_l = x - d*b`.
///
/// No clamping happens here; callers clip the probes into the feasible box
/// before evaluating the objective.
pub fn antenna_probes<T: Real>(x: &[T], d: T, b: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    if x.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: b.len(),
        });
    }
    let right = x.iter().zip(b).map(|(&xi, &bi)| xi + d * bi).collect();
    let left = x.iter().zip(b).map(|(&xi, &bi)| xi - d * bi).collect();
    Ok((right, left))
}

/// Detection step under the default `TowardBetter` convention.
pub fn detect_step<T: Real>(x: &[T], delta: T, b: &[T], f_r: T, f_l: T) -> Result<Vec<T>> {
    detect_step_with(SignConvention::TowardBetter, x, delta, b, f_r, f_l)
}

/// Detection step with an explicit sign convention.
pub fn detect_step_with<T: Real>(
    convention: SignConvention,
    x: &[T],
    delta: T,
    b: &[T],
    f_r: T,
    f_l: T,
) -> Result<Vec<T>> {
    if x.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: b.len(),
        });
    }
    let step = match convention {
        SignConvention::TowardBetter => -delta * sign_of(f_r - f_l),
        SignConvention::AsPrinted => delta * sign_of(f_r - f_l),
    };
    Ok(x.iter().zip(b).map(|(&xi, &bi)| xi + step * bi).collect())
}

/// Current position plus the best-so-far pair `(x_best, f_best)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeetleIncumbent<T> {
    pub x: Vec<T>,
    pub x_best: Vec<T>,
    pub f_best: T,
}

impl<T: Real> BeetleIncumbent<T> {
    /// Starts at `x` with `f = objective(x)`.
    pub fn new(x: Vec<T>, f: T) -> Self {
        Self {
            x_best: x.clone(),
            x,
            f_best: f,
        }
    }

    /// Records `(x, f)` as the new best if strictly better. Returns whether
    /// the incumbent improved.
    pub fn offer(&mut self, x: &[T], f: T) -> bool {
        if f < self.f_best {
            self.f_best = f;
            self.x_best.clear();
            self.x_best.extend_from_slice(x);
            true
        } else {
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probes_match_definition() {
        let (r, l) = antenna_probes(&[0.0, 0.0], 1.0, &[1.0, 0.0]).unwrap();
        assert_eq!(r, vec![1.0, 0.0]);
        assert_eq!(l, vec![-1.0, 0.0]);

        let (r, l) = antenna_probes(&[1.0, 2.0], 0.5, &[0.0, 1.0]).unwrap();
        assert_eq!(r, vec![1.0, 2.5]);
        assert_eq!(l, vec![1.0, 1.5]);
    }

    #[test]
    fn zero_antenna_length_collapses_probes() {
        let x = [0.3, -0.7, 2.0];
        let b = [0.6, 0.8, 0.0];
        let (r, l) = antenna_probes(&x, 0.0, &b).unwrap();
        assert_eq!(r, x.to_vec());
        assert_eq!(l, x.to_vec());
    }

    #[test]
    fn probe_midpoint_is_the_center() {
        let x = [0.25, 0.5];
        let b = [0.28, 0.96];
        let (r, l) = antenna_probes(&x, 0.125, &b).unwrap();
        for i in 0..2 {
            assert_eq!((r[i] + l[i]) / 2.0, x[i]);
        }
    }

    #[test]
    fn probes_reject_length_mismatch() {
        assert!(matches!(
            antenna_probes(&[0.0_f64, 1.0], 1.0, &[1.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            detect_step(&[0.0_f64], 1.0, &[1.0, 0.0], 0.0, 1.0),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn moves_toward_better_antenna() {
        // Right antenna better: move right.
        assert_eq!(detect_step(&[0.0], 1.0, &[1.0], 0.0, 1.0).unwrap(), vec![1.0]);
        // Left antenna better: move left.
        assert_eq!(detect_step(&[0.0], 1.0, &[1.0], 2.0, 1.0).unwrap(), vec![-1.0]);
    }

    #[test]
    fn tie_is_stationary() {
        let x = [0.4, 0.6];
        let out = detect_step(&x, 0.5, &[1.0, 0.0], 1.0, 1.0).unwrap();
        assert_eq!(out, x.to_vec());
        let out = detect_step(&x, 0.5, &[1.0, 0.0], f64::NAN, 1.0).unwrap();
        assert_eq!(out, x.to_vec());
    }

    #[test]
    fn printed_convention_flips_the_move() {
        let toward = detect_step_with(SignConvention::TowardBetter, &[0.0], 1.0, &[1.0], 0.0, 1.0)
            .unwrap();
        let printed =
            detect_step_with(SignConvention::AsPrinted, &[0.0], 1.0, &[1.0], 0.0, 1.0).unwrap();
        assert_eq!(toward, vec![1.0]);
        assert_eq!(printed, vec![-1.0]);
    }

    #[test]
    fn incumbent_accepts_only_strict_improvement() {
        let mut inc = BeetleIncumbent::new(vec![0.5], 2.0);
        assert!(!inc.offer(&[0.4], 2.0));
        assert_eq!(inc.x_best, vec![0.5]);
        assert!(inc.offer(&[0.4], 1.5));
        assert_eq!(inc.x_best, vec![0.4]);
        assert_eq!(inc.f_best, 1.5);
    }
}
