use rayon::prelude::*;

use super::prefix::PrefixState;
use super::{OptResult, OptimizerConfig, Termination, TraceEntry};
use crate::error::OptError;
use crate::geometry::{fits, ArrayGeometry};
use crate::scalar::Real;

/// Default cap on enumerated configurations.
pub const DEFAULT_ES_BUDGET: u128 = 50_000_000;

/// Upper bound on the number of sorted `(N-1)`-tuples: `C(M, N-1)`.
pub fn estimate_configurations(grid_points: usize, n_antennas: usize) -> u128 {
    let k = n_antennas.saturating_sub(1) as u128;
    let m = grid_points as u128;
    if k > m {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.saturating_mul(m - i) / (i + 1);
    }
    c
}

type Best<T> = Option<(T, Vec<usize>)>;

/// Keeps the larger objective; equal objectives keep the lexicographically
/// smaller index tuple.
fn better<T: Real>(a: Best<T>, b: Best<T>) -> Best<T> {
    match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// Enumerates every feasible grid tuple `x_2 < … < x_N` and returns the best.
///
/// Work is split across threads by the first index; the reduction compares
/// `(objective, index tuple)` so the result matches a sequential ascending scan.
pub fn exhaustive_search<T: Real>(
    cfg: &OptimizerConfig<T>,
    max_configs: u128,
) -> Result<OptResult<T>, OptError> {
    cfg.validate()?;
    let m = cfg.grid.len();
    let estimate = estimate_configurations(m, cfg.n_antennas);
    if estimate > max_configs {
        return Err(OptError::BudgetExceeded {
            estimate,
            budget: max_configs,
        });
    }
    let root = PrefixState::root(cfg.u);
    let depth = cfg.n_antennas - 1;
    let best = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut chosen = vec![first];
            search(cfg, &root, first, depth, &mut chosen)
        })
        .reduce(|| None, better);
    let (_, indices) = best.ok_or(OptError::GridExhausted {
        antenna: cfg.n_antennas,
    })?;
    let mut positions = vec![T::zero()];
    positions.extend(indices.iter().map(|&i| cfg.grid.points[i]));
    let geometry = ArrayGeometry::new(positions, cfg.d_min(), cfg.d_max())?;
    let directivity = crate::model::directivity(cfg.u, geometry.positions())?;
    Ok(OptResult {
        positions: geometry,
        directivity,
        trace: vec![TraceEntry {
            iteration: 0,
            directivity,
            step: T::zero(),
        }],
        termination: Termination::Completed,
    })
}

/// Depth-first over ascending indices; `chosen` ends with `index`, which has
/// not yet been added to `state`.
fn search<T: Real>(
    cfg: &OptimizerConfig<T>,
    state: &PrefixState<T>,
    index: usize,
    depth: usize,
    chosen: &mut Vec<usize>,
) -> Best<T> {
    let p = cfg.grid.points[index];
    if !fits(state.positions(), p, cfg.d_min(), cfg.d_max()) {
        return None;
    }
    if chosen.len() == depth {
        return state.score(p).map(|g| (g, chosen.clone()));
    }
    let next = state.extend(p).ok()?;
    let mut best = None;
    for i in index + 1..cfg.grid.len() {
        chosen.push(i);
        best = better(best, search(cfg, &next, i, depth, chosen));
        chosen.pop();
    }
    best
}
