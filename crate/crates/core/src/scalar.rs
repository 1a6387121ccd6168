use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};
use rand::Rng;

/// Scalar type the search and simulation kernels are generic over.
///
/// Covers `f32` and `f64`. Besides the usual float operations this adds the
/// two random draws the optimizers need, so algorithm code does not have to
/// carry `rand` distribution bounds around.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Uniform draw from `[0, 1)`.
    fn uniform_01<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Standard normal draw.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

macro_rules! impl_real {
    ($($t:ty),*) => {$(
        impl Real for $t {
            #[inline]
            fn uniform_01<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.random::<$t>()
            }

            #[inline]
            fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.sample(rand_distr::StandardNormal)
            }
        }
    )*};
}

impl_real!(f32, f64);

/// Shorthand for lifting an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn real<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("constant representable in scalar type")
}
