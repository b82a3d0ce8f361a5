use num_complex::Complex;

use super::{DescentParams, OptResult, Termination, TraceEntry};
use crate::coupling::{coupling_derivative, CouplingMatrix};
use crate::direction::DirectionCosine;
use crate::error::{ModelError, OptError};
use crate::geometry::{is_feasible, ArrayGeometry};
use crate::model::{directivity, steering_vector};
use crate::scalar::Real;

/// `∂G_u/∂x_n` for `n = 2..N`; the first entry is 0 because `x_1` is pinned.
///
/// With `ȧ = R⁻¹ a`:
/// `∂G/∂x_n = 2 Re(ȧᴴ ∂a/∂x_n) - ȧᴴ (∂R/∂x_n) ȧ`, where `∂a/∂x_n` has the single
/// entry `-j 2π u a_n` and `∂R/∂x_n` is nonzero only in row and column `n`,
/// holding `d/dx_n sinc(2 (x_n - x_m))`.
pub fn directivity_gradient<T: Real>(
    u: DirectionCosine<T>,
    positions: &[T],
) -> Result<Vec<T>, ModelError> {
    let n = positions.len();
    let a = steering_vector(u, positions);
    let solved = CouplingMatrix::new(positions).solve(&a)?;
    let two = T::lit(2.0);
    let da_scale = Complex::new(T::zero(), -T::TAU() * u.value());
    let mut grad = vec![T::zero(); n];
    for k in 1..n {
        let steering = two * (solved[k].conj() * da_scale * a[k]).re;
        let coupling = (0..n).filter(|&m| m != k).fold(T::zero(), |acc, m| {
            let d = coupling_derivative(positions[k] - positions[m]);
            acc + two * d * (solved[m].conj() * solved[k]).re
        });
        grad[k] = steering - coupling;
    }
    Ok(grad)
}

/// Gradient ascent with a halving line search.
///
/// Each outer iteration restarts the step at `alpha0` and tries
/// `x + α ∇G`; a candidate is accepted only if it is feasible and strictly
/// improves the directivity. Otherwise `α` is halved, and once it drops below
/// `epsilon` the current iterate is returned.
pub fn gradient_descent<T: Real>(
    u: DirectionCosine<T>,
    initial: &ArrayGeometry<T>,
    params: &DescentParams<T>,
) -> Result<OptResult<T>, OptError> {
    params.validate()?;
    if !initial.is_feasible() {
        return Err(OptError::InfeasibleStart);
    }
    let (d_min, d_max) = (initial.d_min(), initial.d_max());
    let mut x = initial.positions().to_vec();
    let mut current = directivity(u, &x)?;
    let mut trace = vec![TraceEntry {
        iteration: 0,
        directivity: current,
        step: T::zero(),
    }];
    let half = T::lit(0.5);

    let finish = |x: Vec<T>, g: T, trace, termination| -> Result<OptResult<T>, OptError> {
        Ok(OptResult {
            positions: initial.with_positions(x)?,
            directivity: g,
            trace,
            termination,
        })
    };

    for t in 0..params.max_iters {
        let grad = directivity_gradient(u, &x)?;
        let mut alpha = params.alpha0;
        loop {
            let candidate: Vec<T> = x.iter().zip(&grad).map(|(&xi, &gi)| xi + alpha * gi).collect();
            if is_feasible(&candidate, d_min, d_max) {
                if let Ok(g) = directivity(u, &candidate) {
                    if g > current {
                        x = candidate;
                        current = g;
                        trace.push(TraceEntry {
                            iteration: t + 1,
                            directivity: g,
                            step: alpha,
                        });
                        break;
                    }
                }
            }
            alpha = alpha * half;
            if alpha < params.epsilon {
                return finish(x, current, trace, Termination::StepFloor);
            }
        }
    }
    finish(x, current, trace, Termination::MaxIters)
}
