//! Antenna position optimization: maximize `G_u(x)` over `x_2..x_N` subject to
//! `d_min <= |x_m - x_n| <= d_max`, with `x_1 = 0`.
//!
//! - [`greedy_search`] places antennas one at a time on a grid.
//! - [`gradient_descent`] refines continuously with a halving step size.
//! - [`gs_gd`] chains the two.
//! - [`exhaustive_search`] enumerates grid tuples as a global reference.

mod exhaustive;
mod gradient;
mod greedy;
mod grid;
mod prefix;

pub use exhaustive::{estimate_configurations, exhaustive_search, DEFAULT_ES_BUDGET};
pub use gradient::{directivity_gradient, gradient_descent};
pub use greedy::greedy_search;
pub use grid::{build_grid, GridSpec};

use crate::direction::DirectionCosine;
use crate::error::{ModelError, OptError};
use crate::geometry::ArrayGeometry;
use crate::scalar::{count, Real};

/// Step-size controls for the gradient stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentParams<T> {
    /// Outer iterations `T`.
    pub max_iters: usize,
    /// Initial step size, reset at every outer iteration.
    pub alpha0: T,
    /// The line search gives up once the step drops below this.
    pub epsilon: T,
}

impl<T: Real> DescentParams<T> {
    pub fn validate(&self) -> Result<(), OptError> {
        if !(self.epsilon > T::zero() && self.alpha0 > self.epsilon) {
            return Err(OptError::InvalidConfig(format!(
                "need 0 < epsilon < alpha0, got epsilon = {:?}, alpha0 = {:?}",
                self.epsilon, self.alpha0
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig<T> {
    pub n_antennas: usize,
    pub u: DirectionCosine<T>,
    pub grid: GridSpec<T>,
    pub descent: DescentParams<T>,
    /// Reserved for randomized extensions; the algorithms here are deterministic.
    pub rng_seed: u64,
}

impl<T: Real> OptimizerConfig<T> {
    /// Builds the grid from `(d_min, d_max, d_g)`.
    pub fn new(
        n_antennas: usize,
        u: DirectionCosine<T>,
        d_min: T,
        d_max: T,
        d_g: T,
        descent: DescentParams<T>,
    ) -> Result<Self, OptError> {
        let cfg = Self {
            n_antennas,
            u,
            grid: build_grid(d_min, d_max, d_g)?,
            descent,
            rng_seed: 0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), OptError> {
        if self.n_antennas < 2 {
            return Err(OptError::InvalidConfig(format!(
                "need at least 2 antennas, got {}",
                self.n_antennas
            )));
        }
        self.descent.validate()
    }

    pub fn d_min(&self) -> T {
        self.grid.d_min
    }

    pub fn d_max(&self) -> T {
        self.grid.d_max
    }
}

/// One trace point: the objective after `iteration` and the step that got there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry<T> {
    pub iteration: usize,
    pub directivity: T,
    pub step: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// Gradient stage ran all `T` iterations.
    MaxIters,
    /// Line search step fell below `epsilon`.
    StepFloor,
    /// Non-iterative method finished (grid, exhaustive or fixed baseline).
    Completed,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::MaxIters => "MaxIters",
            Termination::StepFloor => "StepFloor",
            Termination::Completed => "Completed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptResult<T> {
    pub positions: ArrayGeometry<T>,
    pub directivity: T,
    pub trace: Vec<TraceEntry<T>>,
    pub termination: Termination,
}

/// Half-wavelength uniform array `[0, 0.5, …, (n-1)/2]`.
pub fn ulah_positions<T: Real>(n_antennas: usize) -> Result<ArrayGeometry<T>, ModelError> {
    ArrayGeometry::unconstrained(
        (0..n_antennas)
            .map(|k| count::<T>(k) * T::lit(0.5))
            .collect(),
    )
}

/// Greedy placement followed by gradient refinement.
pub fn gs_gd<T: Real>(cfg: &OptimizerConfig<T>) -> Result<OptResult<T>, OptError> {
    let gs = greedy_search(cfg)?;
    let gd = gradient_descent(cfg.u, &gs.positions, &cfg.descent)?;
    let offset = gs.trace.last().map_or(0, |e| e.iteration);
    let mut trace = gs.trace;
    trace.extend(gd.trace.into_iter().skip(1).map(|e| TraceEntry {
        iteration: e.iteration + offset,
        ..e
    }));
    Ok(OptResult {
        positions: gd.positions,
        directivity: gd.directivity,
        trace,
        termination: gd.termination,
    })
}
