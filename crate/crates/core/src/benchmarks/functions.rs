
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// `f(x) = sum x_i^2`, minimum 0 at the origin.
pub fn sphere<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, &v| acc + v * v)
}

/// Goldstein-Price function on two variables; global minimum 3 at (0, -1)
/// within the usual [-2, 2]^2 box.
pub fn goldstein_price<T: Real>(x: &[T]) -> Result<T> {
    if x.len() != 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            got: x.len(),
        });
    }
    let (x1, x2) = (x[0], x[1]);
    let c = real::<T>;

    let a = x1 + x2 + T::one();
    let inner_a = c(19.0) - c(14.0) * x1 + c(3.0) * x1 * x1 - c(14.0) * x2
        + c(6.0) * x1 * x2
        + c(3.0) * x2 * x2;
    let term_a = T::one() + a * a * inner_a;

    let b = c(2.0) * x1 - c(3.0) * x2;
    let inner_b = c(18.0) - c(32.0) * x1 + c(12.0) * x1 * x1 + c(48.0) * x2
        - c(36.0) * x1 * x2
        + c(27.0) * x2 * x2;
    let term_b = c(30.0) + b * b * inner_b;

    Ok(term_a * term_b)
}

/// Default steepness for [`michalewicz`].
pub const MICHALEWICZ_STEEPNESS: u32 = 10;

/// Michalewicz function with steepness `m = 10` on `[0, pi]^n`.
pub fn michalewicz<T: Real>(x: &[T]) -> Result<T> {
    michalewicz_with_steepness(x, MICHALEWICZ_STEEPNESS)
}

/// Michalewicz function with explicit steepness.
///
/// `f(x) = -sum_i sin(x_i) * sin(i * x_i^2 / pi)^(2m)` with `i` counted from
/// one. Components outside `[0, pi]` are rejected.
pub fn michalewicz_with_steepness<T: Real>(x: &[T], m: u32) -> Result<T> {
    if x.is_empty() {
        return Err(Error::ZeroDimension);
    }
    let pi = real::<T>(std::f64::consts::PI);
    for (i, &v) in x.iter().enumerate() {
        if !(v >= T::zero() && v <= pi) {
            return Err(Error::OutOfDomain {
                index: i,
                value: v.to_f64().unwrap_or(f64::NAN),
                lower: 0.0,
                upper: std::f64::consts::PI,
            });
        }
    }
    let exponent = 2 * m as i32;
    let total = x.iter().enumerate().fold(T::zero(), |acc, (i, &v)| {
        let scale = T::from_usize(i + 1).expect("index fits in scalar");
        acc + v.sin() * (scale * v * v / pi).sin().powi(exponent)
    });
    Ok(-total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    // Exhaustive grid oracle used to pin the test-function targets. Kept
    // independent of any search code on purpose.
    fn grid_min(
        f: impl Fn(&[f64]) -> f64,
        lo: [f64; 2],
        hi: [f64; 2],
        steps: usize,
    ) -> (f64, [f64; 2]) {
        let mut best = (f64::INFINITY, [0.0, 0.0]);
        for i in 0..=steps {
            let x = lo[0] + (hi[0] - lo[0]) * i as f64 / steps as f64;
            for j in 0..=steps {
                let y = lo[1] + (hi[1] - lo[1]) * j as f64 / steps as f64;
                let v = f(&[x, y]);
                if v < best.0 {
                    best = (v, [x, y]);
                }
            }
        }
        best
    }

    #[test]
    fn goldstein_price_known_points() {
        assert_eq!(goldstein_price(&[0.0, -1.0]).unwrap(), 3.0);
        assert_eq!(goldstein_price(&[0.0, 0.0]).unwrap(), 600.0);
        assert!(matches!(
            goldstein_price(&[0.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn goldstein_price_grid_oracle_confirms_global_minimum() {
        let (min, arg) = grid_min(
            |x| goldstein_price(x).unwrap(),
            [-2.0, -2.0],
            [2.0, 2.0],
            400,
        );
        assert_relative_eq!(min, 3.0, max_relative = 1e-3);
        assert!((arg[0] - 0.0).abs() < 0.02 && (arg[1] + 1.0).abs() < 0.02);
    }

    #[test]
    fn goldstein_price_never_undershoots_the_minimum() {
        let mut rng = crate::rng::RngStream::new(5150);
        for _ in 0..1000 {
            let x = [
                -2.0 + 4.0 * rng.uniform::<f64>(),
                -2.0 + 4.0 * rng.uniform::<f64>(),
            ];
            let v = goldstein_price(&x).unwrap();
            assert!(v.is_finite());
            assert!(v >= 3.0 - 1e-9, "{v} at {x:?}");
        }
    }

    #[test]
    fn michalewicz_known_points() {
        // All-zero input kills every term through sin(0).
        assert_eq!(michalewicz(&[0.0, 0.0, 0.0]).unwrap(), 0.0);

        // Single-term hand evaluation at x = pi/2:
        // -sin(pi/2) * sin((pi/2)^2 / pi)^20 = -sin(pi/4)^20 = -2^-10.
        let v = michalewicz(&[PI / 2.0]).unwrap();
        assert_relative_eq!(v, -(2f64.powi(-10)), max_relative = 1e-12);
    }

    #[test]
    fn michalewicz_grid_oracle_confirms_two_dim_minimum() {
        let (min, arg) = grid_min(|x| michalewicz(x).unwrap(), [0.0, 0.0], [PI, PI], 1500);
        assert_relative_eq!(min, -1.8013, max_relative = 1e-3);
        assert!((arg[0] - 2.2029).abs() < 0.01, "arg {arg:?}");
        assert!((arg[1] - PI / 2.0).abs() < 0.01, "arg {arg:?}");

        // The stated optimum evaluates to the stated value.
        let at_opt = michalewicz(&[2.2029, PI / 2.0]).unwrap();
        assert_relative_eq!(at_opt, -1.8013, max_relative = 1e-4);
    }

    #[test]
    fn michalewicz_rejects_out_of_domain() {
        assert!(matches!(
            michalewicz(&[-0.1]),
            Err(Error::OutOfDomain { index: 0, .. })
        ));
        assert!(matches!(
            michalewicz(&[0.5, PI + 0.01]),
            Err(Error::OutOfDomain { index: 1, .. })
        ));
        assert!(matches!(michalewicz::<f64>(&[]), Err(Error::ZeroDimension)));
        // Inclusive endpoints are fine (clamped probes land exactly there).
        assert!(michalewicz(&[0.0, PI]).is_ok());
    }

    #[test]
    fn sphere_is_zero_at_origin() {
        assert_eq!(sphere(&[0.0, 0.0, 0.0]), 0.0);
        assert_eq!(sphere(&[3.0, 4.0]), 25.0);
        assert_eq!(sphere(&[0.5f32]), 0.25f32);
    }
}
