//! Recursive orthonormalization for sequential placement.
//!
//! With the first `n` antennas fixed, adding one more at `p` appends a row to
//! the Cholesky factor: `l = L⁻¹ r(p)`, pivot `1 - ‖l‖²`. The new effective
//! pattern is `ǎ_{n+1} = (a(p) - lᵀ ǎ) / √pivot`, so the extended directivity
//! is `G_n + |ǎ_{n+1}|²` at `O(n²)` cost per candidate.

use num_complex::Complex;

use crate::coupling::{coupling_coefficient, CouplingMatrix};
use crate::direction::DirectionCosine;
use crate::error::ModelError;
use crate::model::element_pattern;
use crate::scalar::{count, Real};

#[derive(Debug, Clone)]
pub(crate) struct PrefixState<T> {
    u: DirectionCosine<T>,
    positions: Vec<T>,
    /// Row-major lower-triangular factor of the prefix coupling matrix.
    chol: Vec<T>,
    effective: Vec<Complex<T>>,
    directivity: T,
}

impl<T: Real> PrefixState<T> {
    /// Single antenna at the origin.
    pub fn root(u: DirectionCosine<T>) -> Self {
        Self {
            u,
            positions: vec![T::zero()],
            chol: vec![T::one()],
            effective: vec![Complex::new(T::one(), T::zero())],
            directivity: T::one(),
        }
    }

    pub fn positions(&self) -> &[T] {
        &self.positions
    }

    pub fn directivity(&self) -> T {
        self.directivity
    }

    /// New factor row and pivot; `None` when the pivot is not safely positive.
    fn extension(&self, candidate: T) -> Option<(Vec<T>, T)> {
        let n = self.positions.len();
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = coupling_coefficient(candidate - self.positions[i]);
            for k in 0..i {
                s = s - self.chol[i * n + k] * row[k];
            }
            row.push(s / self.chol[i * n + i]);
        }
        let pivot = row.iter().fold(T::one(), |acc, &l| acc - l * l);
        let floor = T::lit(64.0) * T::epsilon() * count::<T>(n + 1);
        (pivot > floor && pivot.is_finite()).then_some((row, pivot))
    }

    fn new_pattern(&self, candidate: T, row: &[T], pivot: T) -> Complex<T> {
        let a = element_pattern(self.u.value(), candidate);
        let proj = row
            .iter()
            .zip(&self.effective)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&l, e)| acc + e * l);
        (a - proj) / pivot.sqrt()
    }

    /// Directivity of the prefix extended by `candidate`, or `None` if the
    /// extended coupling matrix cannot be factorized.
    pub fn score(&self, candidate: T) -> Option<T> {
        match self.extension(candidate) {
            Some((row, pivot)) => {
                Some(self.directivity + self.new_pattern(candidate, &row, pivot).norm_sqr())
            }
            None => {
                let mut x = self.positions.clone();
                x.push(candidate);
                crate::model::directivity(self.u, &x).ok()
            }
        }
    }

    /// Fixes `candidate` as the next antenna.
    pub fn extend(&self, candidate: T) -> Result<Self, ModelError> {
        let n = self.positions.len();
        let mut positions = self.positions.clone();
        positions.push(candidate);
        if let Some((row, pivot)) = self.extension(candidate) {
            let next = self.new_pattern(candidate, &row, pivot);
            let m = n + 1;
            let mut chol = vec![T::zero(); m * m];
            for i in 0..n {
                chol[i * m..i * m + n].copy_from_slice(&self.chol[i * n..i * n + n]);
            }
            chol[n * m..n * m + n].copy_from_slice(&row);
            chol[n * m + n] = pivot.sqrt();
            let mut effective = self.effective.clone();
            effective.push(next);
            return Ok(Self {
                u: self.u,
                positions,
                chol,
                effective,
                directivity: self.directivity + next.norm_sqr(),
            });
        }
        let coupling = CouplingMatrix::new(&positions);
        let chol = coupling.cholesky()?.to_vec();
        let effective = coupling.forward_solve(&crate::model::steering_vector(self.u, &positions))?;
        let directivity = effective.iter().fold(T::zero(), |acc, e| acc + e.norm_sqr());
        Ok(Self {
            u: self.u,
            positions,
            chol,
            effective,
            directivity,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incremental_matches_full_route() {
        let u = DirectionCosine::new(0.37f64).unwrap();
        let mut state = PrefixState::root(u);
        for &p in &[0.45, -0.8, 1.3, 0.15] {
            let score = state.score(p).unwrap();
            state = state.extend(p).unwrap();
            let full = crate::model::directivity(u, state.positions()).unwrap();
            assert!((score - full).abs() < 1e-12 * full);
            assert!((state.directivity() - full).abs() < 1e-12 * full);
        }
    }

    #[test]
    fn coincident_candidate_falls_back_to_loaded_factor() {
        // a duplicated element adds no new pattern, so the score stays put
        let u = DirectionCosine::new(0.2f64).unwrap();
        let state = PrefixState::root(u).extend(0.3).unwrap();
        let g = state.directivity();
        assert!((state.score(0.3).unwrap() - g).abs() < 1e-6 * g);
        let next = state.extend(0.3).unwrap();
        assert!((next.directivity() - g).abs() < 1e-6 * g);
    }
}
