use crate::error::OptError;
use crate::scalar::{count, Real};

/// Candidate positions sampled uniformly over `[-d_max, -d_min] ∪ [d_min, d_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<T> {
    pub d_min: T,
    pub d_max: T,
    pub d_g: T,
    /// Ascending.
    pub points: Vec<T>,
}

impl<T: Real> GridSpec<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Mirrored grid `±(d_min + k·d_g)`, `k = 0, 1, …` while inside `d_max`.
pub fn build_grid<T: Real>(d_min: T, d_max: T, d_g: T) -> Result<GridSpec<T>, OptError> {
    let valid = T::zero() < d_g && d_g < d_min && d_min < d_max && d_max.is_finite();
    if !valid {
        return Err(OptError::InvalidGrid {
            d_g: d_g.as_f64(),
            d_min: d_min.as_f64(),
            d_max: d_max.as_f64(),
        });
    }
    let steps = ((d_max - d_min) / d_g + T::lit(1e-9))
        .floor()
        .to_usize()
        .ok_or(OptError::InvalidGrid {
            d_g: d_g.as_f64(),
            d_min: d_min.as_f64(),
            d_max: d_max.as_f64(),
        })?;
    let side: Vec<T> = (0..=steps).map(|k| d_min + count::<T>(k) * d_g).collect();
    let mut points: Vec<T> = side.iter().rev().map(|&p| -p).collect();
    points.extend(side);
    Ok(GridSpec {
        d_min,
        d_max,
        d_g,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid() {
        let g = build_grid(0.2f64, 0.4, 0.1).unwrap();
        let expected = [-0.4, -0.3, -0.2, 0.2, 0.3, 0.4];
        assert_eq!(g.len(), 6);
        for (p, e) in g.points.iter().zip(expected) {
            assert!((p - e).abs() < 1e-12);
        }
    }

    #[test]
    fn table_two_grid() {
        let g = build_grid(0.1f64, 4.0, 0.05).unwrap();
        assert_eq!(g.len(), 158);
        assert_eq!(g.points[78], -0.1);
        assert_eq!(g.points[79], 0.1);
        assert!((g.points[157] - 4.0).abs() < 1e-12);
        assert!(g.points.windows(2).all(|w| w[0] < w[1]));
        for w in g.points[79..].windows(2) {
            assert!((w[1] - w[0] - 0.05).abs() < 1e-12);
        }
    }

    #[test]
    fn outer_endpoint_within_one_step() {
        let g = build_grid(0.25f64, 1.03, 0.2).unwrap();
        let last = *g.points.last().unwrap();
        assert!(last <= 1.03 && 1.03 - last < 0.2);
        assert_eq!(g.points[0], -last);
    }

    #[test]
    fn invalid_grids() {
        assert!(matches!(build_grid(0.1f64, 1.0, 0.1), Err(OptError::InvalidGrid { .. })));
        assert!(matches!(build_grid(0.1f64, 1.0, 0.0), Err(OptError::InvalidGrid { .. })));
        assert!(matches!(build_grid(0.5f64, 0.4, 0.1), Err(OptError::InvalidGrid { .. })));
    }
}
