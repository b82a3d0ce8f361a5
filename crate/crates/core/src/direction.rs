use crate::error::ModelError;
use crate::scalar::Real;

/// Direction cosine `u = cos θ` of the wave direction relative to the array axis.
///
/// `u = 1` is endfire along the positive axis, `u = 0` is broadside.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DirectionCosine<T>(T);

impl<T: Real> DirectionCosine<T> {
    pub fn new(u: T) -> Result<Self, ModelError> {
        if !(u >= -T::one() && u <= T::one()) {
            return Err(ModelError::InvalidDirection(u.as_f64()));
        }
        Ok(Self(u))
    }

    /// Direction from an angle in degrees, θ ∈ [0°, 180°].
    ///
    /// 0°, 90° and 180° map to exactly 1, 0 and -1.
    pub fn from_degrees(theta_deg: T) -> Result<Self, ModelError> {
        let (zero, right, straight) = (T::zero(), T::lit(90.0), T::lit(180.0));
        if !(theta_deg >= zero && theta_deg <= straight) {
            return Err(ModelError::InvalidDirection(theta_deg.as_f64()));
        }
        let u = if theta_deg == zero {
            T::one()
        } else if theta_deg == right {
            T::zero()
        } else if theta_deg == straight {
            -T::one()
        } else {
            theta_deg.to_radians().cos()
        };
        Self::new(u.max(-T::one()).min(T::one()))
    }

    pub fn broadside() -> Self {
        Self(T::zero())
    }

    pub fn endfire() -> Self {
        Self(T::one())
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// The mirrored direction `-u` (θ → 180° − θ).
    #[inline]
    pub fn mirrored(self) -> Self {
        Self(-self.0)
    }
}
