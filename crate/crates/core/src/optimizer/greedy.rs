use super::prefix::PrefixState;
use super::{OptResult, OptimizerConfig, Termination, TraceEntry};
use crate::error::OptError;
use crate::geometry::{fits, ArrayGeometry};
use crate::scalar::Real;

/// Sequential grid placement.
///
/// With `x_1 = 0` fixed, antenna `n + 1` goes to the grid point that maximizes
/// the directivity of the `(n + 1)`-element subarray among points satisfying the
/// spacing constraints against every antenna already placed. The scan runs over
/// ascending grid points and keeps the first maximizer.
pub fn greedy_search<T: Real>(cfg: &OptimizerConfig<T>) -> Result<OptResult<T>, OptError> {
    cfg.validate()?;
    let (d_min, d_max) = (cfg.d_min(), cfg.d_max());
    let mut state = PrefixState::root(cfg.u);
    let mut trace = vec![TraceEntry {
        iteration: 0,
        directivity: state.directivity(),
        step: T::zero(),
    }];
    for step in 1..cfg.n_antennas {
        let mut best: Option<(T, T)> = None;
        for &p in &cfg.grid.points {
            if !fits(state.positions(), p, d_min, d_max) {
                continue;
            }
            let Some(score) = state.score(p) else {
                continue;
            };
            if best.is_none_or(|(b, _)| score > b) {
                best = Some((score, p));
            }
        }
        let (_, chosen) = best.ok_or(OptError::GridExhausted { antenna: step + 1 })?;
        state = state.extend(chosen)?;
        trace.push(TraceEntry {
            iteration: step,
            directivity: state.directivity(),
            step: T::zero(),
        });
    }
    let positions = ArrayGeometry::new(state.positions().to_vec(), d_min, d_max)?;
    let directivity = crate::model::directivity(cfg.u, positions.positions())?;
    Ok(OptResult {
        positions,
        directivity,
        trace,
        termination: Termination::Completed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::DirectionCosine;
    use crate::optimizer::{DescentParams, OptimizerConfig};

    fn cfg(n: usize, u: f64, d_max: f64) -> OptimizerConfig<f64> {
        OptimizerConfig::new(
            n,
            DirectionCosine::new(u).unwrap(),
            0.1,
            d_max,
            0.05,
            DescentParams {
                max_iters: 5,
                alpha0: 1.0,
                epsilon: 1e-3,
            },
        )
        .unwrap()
    }

    #[test]
    fn two_antennas_broadside_picks_first_maximizer() {
        let r = greedy_search(&cfg(2, 0.0, 1.0)).unwrap();
        let x2 = r.positions.positions()[1];
        assert!((x2 + 0.7).abs() < 1e-12, "x2 = {x2}");
        // 2 / (1 + sinc(1.4))
        assert!((r.directivity - 2.551_789_226_398_828).abs() < 1e-9);
        assert_eq!(r.termination, Termination::Completed);
    }

    #[test]
    fn five_antennas_endfire_beats_ulah() {
        let r = greedy_search(&cfg(5, 1.0, 2.0)).unwrap();
        assert!(r.directivity > 5.0);
        assert!(r.positions.is_feasible());
        assert_eq!(r.trace.len(), 5);
        assert!(r.trace.windows(2).all(|w| w[1].directivity >= w[0].directivity));
    }

    #[test]
    fn grid_exhaustion_is_an_error() {
        // only ±0.1 and ±0.15 exist; four antennas cannot all be 0.1 apart within 0.15
        let c = OptimizerConfig::new(
            4,
            DirectionCosine::new(0.0).unwrap(),
            0.1,
            0.15,
            0.05,
            DescentParams {
                max_iters: 5,
                alpha0: 1.0,
                epsilon: 1e-3,
            },
        )
        .unwrap();
        assert!(matches!(
            greedy_search(&c),
            Err(OptError::GridExhausted { .. })
        ));
    }

    #[test]
    fn deterministic() {
        let c = cfg(4, 0.42, 3.0);
        assert_eq!(greedy_search(&c).unwrap(), greedy_search(&c).unwrap());
    }
}
