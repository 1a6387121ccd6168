use std::fmt;


use crate::error::{Error, Result};
use crate::scalar::Real;

/// Objective callback type. Objectives may fail (e.g. when wrapping external
/// simulators); infallible closures are wrapped by [`SearchProblem::new`].
pub type DynObjective<T> = dyn Fn(&[T]) -> Result<T> + Send + Sync;

/// A box-bounded minimization target: dimension, bounds and the objective
/// `f(x)` evaluated on physical (denormalized) coordinates.
///
/// The optimizers themselves walk the normalized unit cube and only touch
/// physical coordinates through [`SearchProblem::evaluate_normalized`], so a
/// single step length stays meaningful even when components span several
/// orders of magnitude.
pub struct SearchProblem<T> {
    lower: Vec<T>,
    upper: Vec<T>,
    objective: Box<DynObjective<T>>,
}

impl<T: Real> SearchProblem<T> {
    /// Builds a problem from an infallible objective.
    pub fn new<F>(lower: Vec<T>, upper: Vec<T>, objective: F) -> Result<Self>
    where
        F: Fn(&[T]) -> T + Send + Sync + 'static,
    {
        Self::fallible(lower, upper, move |x| Ok(objective(x)))
    }

    /// Builds a problem from an objective that may report evaluation failures.
    pub fn fallible<F>(lower: Vec<T>, upper: Vec<T>, objective: F) -> Result<Self>
    where
        F: Fn(&[T]) -> Result<T> + Send + Sync + 'static,
    {
        if lower.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if lower.len() != upper.len() {
            return Err(Error::LengthMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidBounds {
                    index: i,
                    lower: lo.to_f64().unwrap_or(f64::NAN),
                    upper: hi.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            lower,
            upper,
            objective: Box::new(objective),
        })
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower_bounds(&self) -> &[T] {
        &self.lower
    }

    pub fn upper_bounds(&self) -> &[T] {
        &self.upper
    }

    /// Evaluates the objective at a physical-coordinate point.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        if x.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                got: x.len(),
            });
        }
        (self.objective)(x)
    }

    /// Evaluates the objective at a normalized point (denormalizes first).
    pub fn evaluate_normalized(&self, u: &[T]) -> Result<T> {
        self.evaluate(&self.denormalize(u))
    }

    /// Clips every component into `[lower, upper]`.
    pub fn clamp(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.dimension(), "clamp: dimension mismatch");
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| v.max(lo).min(hi))
            .collect()
    }

    /// Affine map sending `lower` to the all-zeros vector and `upper` to
    /// all-ones.
    pub fn normalize(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.dimension(), "normalize: dimension mismatch");
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| (v - lo) / (hi - lo))
            .collect()
    }

    /// Inverse of [`SearchProblem::normalize`].
    pub fn denormalize(&self, u: &[T]) -> Vec<T> {
        assert_eq!(u.len(), self.dimension(), "denormalize: dimension mismatch");
        u.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&t, (&lo, &hi))| lo + t * (hi - lo))
            .collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for SearchProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchProblem")
            .field("dimension", &self.lower.len())
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .finish_non_exhaustive()
    }
}

/// Clips a normalized point into the unit cube. Equivalent to
/// [`SearchProblem::clamp`] composed with the bound maps.
pub fn clamp_unit<T: Real>(u: &mut [T]) {
    for v in u {
        *v = v.max(T::zero()).min(T::one());
    }
}
