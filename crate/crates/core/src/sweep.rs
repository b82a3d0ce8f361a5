//! Direction sweeps over θ ∈ [0°, 90°] for several algorithms and apertures,
//! plus the fixed-geometry studies behind the approximation table and curves.
//!
//! Work items `(θ, algorithm, d_max)` run in parallel on the ambient rayon
//! pool; output order is always `(θ asc, algorithm, d_max asc)`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::closed_forms::{first_order_pattern_power, ROUNDED_BROADSIDE_SPACING};
use crate::direction::DirectionCosine;
use crate::error::{OptError, SweepError};
use crate::geometry::ArrayGeometry;
use crate::model::{effective_steering, evaluate};
use crate::optimizer::{
    exhaustive_search, gradient_descent, greedy_search, gs_gd, ulah_positions, DescentParams,
    OptResult, OptimizerConfig, Termination, DEFAULT_ES_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    GsGd,
    Gs,
    Gd,
    Es,
    Ulah,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::GsGd,
        Algorithm::Gs,
        Algorithm::Gd,
        Algorithm::Es,
        Algorithm::Ulah,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Algorithm::GsGd => "GS-GD",
            Algorithm::Gs => "GS",
            Algorithm::Gd => "GD",
            Algorithm::Es => "ES",
            Algorithm::Ulah => "ULAH",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "gsgd" => Ok(Algorithm::GsGd),
            "gs" => Ok(Algorithm::Gs),
            "gd" => Ok(Algorithm::Gd),
            "es" => Ok(Algorithm::Es),
            "ulah" => Ok(Algorithm::Ulah),
            _ => Err(SweepError::InvalidSpec(format!("unknown algorithm `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Degrees, ascending, within [0, 90].
    pub thetas: Vec<f64>,
    pub algorithms: Vec<Algorithm>,
    pub n_antennas: usize,
    /// `d_max` values in wavelengths.
    pub apertures: Vec<f64>,
    pub d_min: f64,
    pub d_g: f64,
    /// Gradient iterations after greedy placement.
    pub iterations: usize,
    /// Gradient iterations for the GD baseline started from the ULAH.
    pub gd_iterations: usize,
    pub alpha0: f64,
    pub epsilon: f64,
    pub es_budget: u128,
}

impl SweepSpec {
    /// Five antennas, λ/10 minimum spacing, λ/20 grid, `T = 5`, `α₀ = 1`,
    /// `ε = 1e-3`, apertures `(N-1)/2`, `N-1`, `2(N-1)` wavelengths, 1° steps.
    pub fn reference(algorithms: Vec<Algorithm>) -> Self {
        let n = 5usize;
        let span = (n - 1) as f64;
        Self {
            thetas: (0..=90).map(f64::from).collect(),
            algorithms,
            n_antennas: n,
            apertures: vec![span / 2.0, span, 2.0 * span],
            d_min: 0.1,
            d_g: 0.05,
            iterations: 5,
            gd_iterations: 30,
            alpha0: 1.0,
            epsilon: 1e-3,
            es_budget: DEFAULT_ES_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let invalid = |msg: String| Err(SweepError::InvalidSpec(msg));
        if self.thetas.is_empty() {
            return invalid("no angles".into());
        }
        if self.algorithms.is_empty() {
            return invalid("no algorithms".into());
        }
        if self.apertures.is_empty() {
            return invalid("no apertures".into());
        }
        if self.n_antennas < 2 {
            return invalid(format!("need at least 2 antennas, got {}", self.n_antennas));
        }
        if !self.thetas.iter().all(|t| (0.0..=90.0).contains(t)) {
            return invalid("angles must lie in [0, 90] degrees".into());
        }
        if !self.thetas.windows(2).all(|w| w[0] < w[1]) {
            return invalid("angles must be strictly ascending".into());
        }
        if !(self.d_g > 0.0 && self.d_g < self.d_min) {
            return invalid(format!("need 0 < d_g < d_min, got d_g = {}", self.d_g));
        }
        if !self.apertures.iter().all(|&a| a > self.d_min && a.is_finite()) {
            return invalid("every aperture must exceed d_min".into());
        }
        if !(self.epsilon > 0.0 && self.alpha0 > self.epsilon) {
            return invalid("need 0 < epsilon < alpha0".into());
        }
        Ok(())
    }
}

/// How a record's run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordOutcome {
    Finished(Termination),
    Failed(&'static str),
}

impl RecordOutcome {
    pub fn is_success(self) -> bool {
        matches!(self, RecordOutcome::Finished(_))
    }
}

impl fmt::Display for RecordOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordOutcome::Finished(t) => f.write_str(t.name()),
            RecordOutcome::Failed(name) => f.write_str(name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub theta_deg: f64,
    pub u: f64,
    pub algorithm: Algorithm,
    pub d_max: f64,
    /// NaN when the run failed.
    pub directivity: f64,
    /// Empty when the run failed.
    pub positions: Vec<f64>,
    pub wall_time_ms: f64,
    pub termination: RecordOutcome,
    pub jitter_applied: f64,
}

/// Runs every `(θ, algorithm, d_max)` combination.
///
/// Per-item failures (for instance an exhausted ES budget) are recorded in
/// [`SweepRecord::termination`] and never abort the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>, SweepError> {
    spec.validate()?;
    let mut algorithms = spec.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();
    let mut apertures = spec.apertures.clone();
    apertures.sort_by(|a, b| a.total_cmp(b));
    apertures.dedup();

    let items: Vec<(f64, Algorithm, f64)> = spec
        .thetas
        .iter()
        .flat_map(|&theta| {
            let apertures = &apertures;
            algorithms
                .iter()
                .flat_map(move |&alg| apertures.iter().map(move |&d_max| (theta, alg, d_max)))
        })
        .collect();

    items
        .into_par_iter()
        .map(|(theta, alg, d_max)| run_item(spec, theta, alg, d_max))
        .collect()
}

fn run_item(
    spec: &SweepSpec,
    theta_deg: f64,
    algorithm: Algorithm,
    d_max: f64,
) -> Result<SweepRecord, SweepError> {
    let u = DirectionCosine::from_degrees(theta_deg)?;
    let start = Instant::now();
    let outcome = run_algorithm(spec, u, algorithm, d_max);
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let base = SweepRecord {
        theta_deg,
        u: u.value(),
        algorithm,
        d_max,
        directivity: f64::NAN,
        positions: Vec::new(),
        wall_time_ms,
        termination: RecordOutcome::Failed("Unknown"),
        jitter_applied: 0.0,
    };
    Ok(match outcome {
        Ok(result) => {
            let positions = result.positions.into_positions();
            let eval = evaluate(u, &positions)?;
            SweepRecord {
                directivity: eval.directivity,
                jitter_applied: eval.jitter_applied,
                positions,
                termination: RecordOutcome::Finished(result.termination),
                ..base
            }
        }
        Err(e) => SweepRecord {
            termination: RecordOutcome::Failed(e.name()),
            ..base
        },
    })
}

/// One optimizer run with the sweep's settings.
pub fn run_algorithm(
    spec: &SweepSpec,
    u: DirectionCosine<f64>,
    algorithm: Algorithm,
    d_max: f64,
) -> Result<OptResult<f64>, OptError> {
    let descent = DescentParams {
        max_iters: spec.iterations,
        alpha0: spec.alpha0,
        epsilon: spec.epsilon,
    };
    let config = || OptimizerConfig::new(spec.n_antennas, u, spec.d_min, d_max, spec.d_g, descent);
    let ulah = || -> Result<ArrayGeometry<f64>, OptError> {
        let x = ulah_positions::<f64>(spec.n_antennas)?;
        Ok(ArrayGeometry::new(x.into_positions(), spec.d_min, d_max)?)
    };
    match algorithm {
        Algorithm::GsGd => gs_gd(&config()?),
        Algorithm::Gs => greedy_search(&config()?),
        Algorithm::Es => exhaustive_search(&config()?, spec.es_budget),
        Algorithm::Gd => {
            let params = DescentParams {
                max_iters: spec.gd_iterations,
                ..descent
            };
            gradient_descent(u, &ulah()?, &params)
        }
        Algorithm::Ulah => {
            let positions = ulah()?;
            let directivity = crate::model::directivity(u, positions.positions())?;
            Ok(OptResult {
                positions,
                directivity,
                trace: Vec::new(),
                termination: Termination::Completed,
            })
        }
    }
}

/// Largest relative gap between a record's directivity and a fresh
/// evaluation of its positions (failed records are skipped).
pub fn revalidate(records: &[SweepRecord]) -> Result<f64, SweepError> {
    let mut worst = 0.0f64;
    for r in records.iter().filter(|r| r.termination.is_success()) {
        let g = crate::model::directivity(DirectionCosine::new(r.u)?, &r.positions)?;
        worst = worst.max(((g - r.directivity) / g).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainRow {
    pub theta_deg: f64,
    pub algorithm: Algorithm,
    pub d_max: f64,
    pub ratio: f64,
}

/// Directivity relative to the uncoupled half-wavelength array (`N`).
pub fn gain_over_ulah(records: &[SweepRecord]) -> Vec<GainRow> {
    records
        .iter()
        .filter(|r| r.termination.is_success())
        .map(|r| {
            let baseline = records
                .iter()
                .find(|b| {
                    b.algorithm == Algorithm::Ulah
                        && b.theta_deg == r.theta_deg
                        && b.termination.is_success()
                })
                .map_or(r.positions.len() as f64, |b| b.directivity);
            GainRow {
                theta_deg: r.theta_deg,
                algorithm: r.algorithm,
                d_max: r.d_max,
                ratio: r.directivity / baseline,
            }
        })
        .collect()
}

/// Relative tolerance under which two apertures count as saturated.
pub const SATURATION_TOLERANCE: f64 = 0.02;

/// Per θ: does `d_max = (N-1)λ` reach the directivity of `d_max = 2(N-1)λ`?
///
/// Each aperture is represented by its best successful optimizer record.
pub fn aperture_saturation(
    records: &[SweepRecord],
    n_antennas: usize,
) -> Result<Vec<(f64, bool)>, SweepError> {
    let small = (n_antennas - 1) as f64;
    let large = 2.0 * small;
    let mut thetas: Vec<f64> = records.iter().map(|r| r.theta_deg).collect();
    thetas.sort_by(|a, b| a.total_cmp(b));
    thetas.dedup();
    let best = |theta: f64, d_max: f64| {
        records
            .iter()
            .filter(|r| {
                r.theta_deg == theta
                    && (r.d_max - d_max).abs() < 1e-9
                    && r.algorithm != Algorithm::Ulah
                    && r.termination.is_success()
            })
            .map(|r| r.directivity)
            .fold(None, |acc: Option<f64>, g| Some(acc.map_or(g, |a| a.max(g))))
    };
    thetas
        .into_iter()
        .map(|theta| {
            let g_small = best(theta, small).ok_or(SweepError::MissingAperture(small))?;
            let g_large = best(theta, large).ok_or(SweepError::MissingAperture(large))?;
            Ok((theta, ((g_small - g_large) / g_large).abs() <= SATURATION_TOLERANCE))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub n_antennas: usize,
    /// Broadside directivity of the uniform array.
    pub exact: f64,
    /// `1.44 N - 0.44`.
    pub approx: f64,
}

/// Broadside directivity of uniform arrays at the rounded optimal spacing
/// against the neighbour-coupling approximation, for `N = 2..=5`.
pub fn reproduce_table1() -> Result<Vec<Table1Row>, SweepError> {
    (2..=5)
        .map(|n| {
            let x: Vec<f64> = (0..n).map(|k| k as f64 * ROUNDED_BROADSIDE_SPACING).collect();
            let exact = effective_steering(DirectionCosine::broadside(), &x)?.squared_norm;
            let approx = crate::closed_forms::adjacent_only_broadside::<f64>(n).directivity;
            Ok(Table1Row {
                n_antennas: n,
                exact,
                approx,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig2Row {
    pub n: usize,
    pub d: f64,
    pub u: f64,
    /// `|ǎ_n(u)|²` from the orthonormalized basis.
    pub exact: f64,
    /// First-order estimate of the same quantity.
    pub approx: f64,
}

/// Directions sampled for the pattern-power curves.
pub const FIG2_DIRECTIONS: [f64; 3] = [0.0, 0.5, 1.0];

/// Spacings `0.50, 0.51, …, 2.00` wavelengths.
pub fn fig2_spacings() -> Vec<f64> {
    (50..=200).map(|k| f64::from(k) / 100.0).collect()
}

/// Exact and first-order `|ǎ_n|²` of the `n`-th antenna of a uniform array.
pub fn reproduce_fig2(n: usize, spacings: &[f64]) -> Result<Vec<Fig2Row>, SweepError> {
    if !(n == 2 || n == 3) {
        return Err(SweepError::InvalidSpec(format!(
            "pattern index must be 2 or 3, got {n}"
        )));
    }
    let mut rows = Vec::with_capacity(spacings.len() * FIG2_DIRECTIONS.len());
    for &d in spacings {
        if !(0.5..=2.0).contains(&d) {
            return Err(SweepError::SpacingOutOfRange(d));
        }
        let x: Vec<f64> = (0..n).map(|k| k as f64 * d).collect();
        for &u in &FIG2_DIRECTIONS {
            let dir = DirectionCosine::new(u)?;
            let exact = effective_steering(dir, &x)?.values[n - 1].norm_sqr();
            let approx = first_order_pattern_power(&x, n - 1, dir);
            rows.push(Fig2Row {
                n,
                d,
                u,
                exact,
                approx,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec(algorithms: Vec<Algorithm>) -> SweepSpec {
        SweepSpec {
            thetas: vec![0.0, 30.0, 60.0, 90.0],
            n_antennas: 3,
            apertures: vec![1.0, 2.0],
            ..SweepSpec::reference(algorithms)
        }
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.label().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("gsgd".parse::<Algorithm>().unwrap(), Algorithm::GsGd);
        assert!("annealing".parse::<Algorithm>().is_err());
    }

    #[test]
    fn ulah_only_sweep_is_flat() {
        let spec = SweepSpec {
            thetas: vec![0.0, 30.0, 60.0, 90.0],
            apertures: vec![4.0],
            ..SweepSpec::reference(vec![Algorithm::Ulah])
        };
        let records = run_sweep(&spec).unwrap();
        assert_eq!(records.len(), 4);
        for r in &records {
            assert!((r.directivity - 5.0).abs() < 1e-9);
            assert_eq!(r.positions, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        }
        for g in gain_over_ulah(&records) {
            assert!((g.ratio - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_order() {
        let spec = small_spec(vec![Algorithm::Ulah, Algorithm::Gs, Algorithm::GsGd]);
        let records = run_sweep(&spec).unwrap();
        assert_eq!(records.len(), 4 * 3 * 2);
        let keys: Vec<_> = records
            .iter()
            .map(|r| (r.theta_deg, r.algorithm, r.d_max))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then(a.1.cmp(&b.1))
                .then(a.2.total_cmp(&b.2))
        });
        assert_eq!(keys, sorted);
        assert!(revalidate(&records).unwrap() < 1e-9);
    }

    #[test]
    fn budget_failure_is_embedded() {
        let spec = SweepSpec {
            es_budget: 10,
            ..small_spec(vec![Algorithm::Es, Algorithm::Ulah])
        };
        let records = run_sweep(&spec).unwrap();
        let es: Vec<_> = records.iter().filter(|r| r.algorithm == Algorithm::Es).collect();
        assert!(es.iter().all(|r| r.termination == RecordOutcome::Failed("BudgetExceeded")));
        assert!(es.iter().all(|r| r.directivity.is_nan()));
    }

    #[test]
    fn invalid_specs() {
        assert!(run_sweep(&small_spec(vec![])).is_err());
        let spec = SweepSpec {
            thetas: vec![],
            ..small_spec(vec![Algorithm::Gs])
        };
        assert!(run_sweep(&spec).is_err());
        let spec = SweepSpec {
            thetas: vec![100.0],
            ..small_spec(vec![Algorithm::Gs])
        };
        assert!(run_sweep(&spec).is_err());
    }

    fn synthetic(theta: f64, d_max: f64, g: f64) -> SweepRecord {
        SweepRecord {
            theta_deg: theta,
            u: 0.0,
            algorithm: Algorithm::GsGd,
            d_max,
            directivity: g,
            positions: vec![0.0; 5],
            wall_time_ms: 0.0,
            termination: RecordOutcome::Finished(Termination::MaxIters),
            jitter_applied: 0.0,
        }
    }

    #[test]
    fn saturation_on_synthetic_records() {
        let equal = [synthetic(90.0, 4.0, 6.0), synthetic(90.0, 8.0, 6.0)];
        assert_eq!(aperture_saturation(&equal, 5).unwrap(), vec![(90.0, true)]);
        let gap = [synthetic(90.0, 4.0, 5.0), synthetic(90.0, 8.0, 6.0)];
        assert_eq!(aperture_saturation(&gap, 5).unwrap(), vec![(90.0, false)]);
        let missing = [synthetic(90.0, 4.0, 5.0)];
        assert_eq!(
            aperture_saturation(&missing, 5),
            Err(SweepError::MissingAperture(8.0))
        );
    }

    #[test]
    fn fig2_examples() {
        let rows = reproduce_fig2(2, &[0.5]).unwrap();
        for r in &rows {
            assert!((r.exact - 1.0).abs() < 1e-12);
            assert!((r.approx - 1.0).abs() < 1e-12);
        }
        let rows = reproduce_fig2(2, &[0.72]).unwrap();
        assert!((rows[0].approx - 1.434_266_309_693_385).abs() < 1e-12);
        let rows = reproduce_fig2(3, &[0.6]).unwrap();
        let at_endfire = rows.iter().find(|r| r.u == 1.0).unwrap();
        assert!((at_endfire.exact - at_endfire.approx).abs() < 0.15);
        assert!(reproduce_fig2(4, &[0.6]).is_err());
        assert_eq!(
            reproduce_fig2(2, &[0.3]),
            Err(SweepError::SpacingOutOfRange(0.3))
        );
        assert_eq!(fig2_spacings().len(), 151);
    }
}
