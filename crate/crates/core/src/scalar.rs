//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! The model and the optimizers are written once against [`Real`] and
//! instantiated for `f32`, `f64` and [`DoubleDouble`]. The extended type
//! exists for the superdirective regime, where the coupling matrix has a
//! condition number well beyond `1 / f64::EPSILON`.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};

use crate::double::DoubleDouble;

/// Real floating-point scalar usable by the array model.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` literal. Every supported type represents all `f64`
    /// values (possibly rounded, for `f32`), so this never fails.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must be representable")
    }

    /// Lossy conversion back to `f64` for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
impl Real for DoubleDouble {}

/// Converts a count to the scalar type.
#[inline]
pub(crate) fn count<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count must be representable")
}
