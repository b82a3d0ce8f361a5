use crate::error::ModelError;
use crate::scalar::Real;

/// Absolute slack, in wavelengths, applied to the spacing constraints so
/// grid points built by repeated addition are not rejected by rounding.
pub const FEASIBILITY_SLACK: f64 = 1e-9;

/// Antenna position vector of a linear array plus its spacing constraints.
///
/// All lengths are in wavelengths. The first antenna is pinned to the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry<T> {
    positions: Vec<T>,
    d_min: T,
    d_max: T,
}

impl<T: Real> ArrayGeometry<T> {
    pub fn new(positions: Vec<T>, d_min: T, d_max: T) -> Result<Self, ModelError> {
        if positions.is_empty() {
            return Err(ModelError::EmptyGeometry);
        }
        if let Some(index) = positions.iter().position(|x| !x.is_finite()) {
            return Err(ModelError::NonFinitePosition { index });
        }
        if positions[0] != T::zero() {
            return Err(ModelError::UnpinnedOrigin(positions[0].as_f64()));
        }
        if !(d_min > T::zero() && d_max > d_min && d_max.is_finite()) {
            return Err(ModelError::InvalidBounds {
                d_min: d_min.as_f64(),
                d_max: d_max.as_f64(),
            });
        }
        Ok(Self {
            positions,
            d_min,
            d_max,
        })
    }

    /// Geometry whose bounds never bind: `d_min` is tiny and `d_max` huge.
    /// Used for analytic studies where only the positions matter.
    pub fn unconstrained(positions: Vec<T>) -> Result<Self, ModelError> {
        Self::new(positions, T::min_positive_value(), T::max_value())
    }

    /// Uniform linear array with `spacing` wavelengths between neighbours.
    pub fn uniform(n: usize, spacing: T, d_min: T, d_max: T) -> Result<Self, ModelError> {
        let positions = (0..n)
            .map(|k| crate::scalar::count::<T>(k) * spacing)
            .collect();
        Self::new(positions, d_min, d_max)
    }

    #[inline]
    pub fn positions(&self) -> &[T] {
        &self.positions
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    #[inline]
    pub fn d_min(&self) -> T {
        self.d_min
    }

    #[inline]
    pub fn d_max(&self) -> T {
        self.d_max
    }

    pub fn into_positions(self) -> Vec<T> {
        self.positions
    }

    /// Same constraints, new positions.
    pub fn with_positions(&self, positions: Vec<T>) -> Result<Self, ModelError> {
        Self::new(positions, self.d_min, self.d_max)
    }

    /// True iff every pair satisfies `d_min <= |x_m - x_n| <= d_max`.
    pub fn is_feasible(&self) -> bool {
        is_feasible(&self.positions, self.d_min, self.d_max)
    }

    /// Positions sorted ascending.
    pub fn sorted_positions(&self) -> Vec<T> {
        let mut x = self.positions.clone();
        x.sort_by(|a, b| a.partial_cmp(b).expect("positions are finite"));
        x
    }
}

/// Pairwise spacing constraints on a raw position slice.
pub fn is_feasible<T: Real>(positions: &[T], d_min: T, d_max: T) -> bool {
    let slack = T::lit(FEASIBILITY_SLACK);
    let (lo, hi) = (d_min - slack, d_max + slack);
    positions.iter().enumerate().all(|(m, &xm)| {
        xm.is_finite()
            && positions[m + 1..].iter().all(|&xn| {
                let d = (xm - xn).abs();
                d >= lo && d <= hi
            })
    })
}

/// Checks a single new position against already placed ones.
pub(crate) fn fits<T: Real>(placed: &[T], candidate: T, d_min: T, d_max: T) -> bool {
    let slack = T::lit(FEASIBILITY_SLACK);
    placed.iter().all(|&x| {
        let d = (candidate - x).abs();
        d >= d_min - slack && d <= d_max + slack
    })
}
