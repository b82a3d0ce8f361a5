//! Closed-form directivities for special geometries.
//!
//! These are independent of the Cholesky machinery in [`crate::model`] and
//! serve as oracles for it: the exact two-antenna formula, the first-order
//! weak-coupling expansion for spacings above half a wavelength, and the
//! Legendre limit of a vanishing-spacing uniform array.

use crate::coupling::coupling_coefficient;
use crate::direction::DirectionCosine;
use crate::error::ModelError;
use crate::legendre::LegendreTable;
use crate::scalar::{count, Real};

/// Rounded broadside-optimal neighbour spacing, in wavelengths.
pub const ROUNDED_BROADSIDE_SPACING: f64 = 0.72;

/// Exact directivity of the pair `[0, x2]` toward `u`:
/// `2 (1 - cos(2π x2 u) sinc(2 x2)) / (1 - sinc²(2 x2))`.
pub fn two_antenna_directivity<T: Real>(x2: T, u: DirectionCosine<T>) -> Result<T, ModelError> {
    if x2.abs() < T::lit(1e-9) {
        return Err(ModelError::DegenerateSpacing(x2.as_f64()));
    }
    let s = coupling_coefficient(x2);
    let c = (T::TAU() * x2 * u.value()).cos();
    Ok(T::lit(2.0) * (T::one() - c * s) / (T::one() - s * s))
}

/// Broadside (`u = 0`) special case `2 / (1 + sinc(2 x2))`.
pub fn two_antenna_broadside<T: Real>(x2: T) -> T {
    T::lit(2.0) / (T::one() + coupling_coefficient(x2))
}

/// First-order weak-coupling estimate of the directivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderEstimate<T> {
    pub value: T,
    /// All pairwise spacings exceed half a wavelength.
    pub in_regime: bool,
}

/// `N - 2 Σ_{m<n} sinc(k_mn/π) cos(k_mn u)` with `k_mn = 2π (x_m - x_n)`.
pub fn first_order_directivity<T: Real>(
    positions: &[T],
    u: DirectionCosine<T>,
) -> FirstOrderEstimate<T> {
    let n = positions.len();
    let mut value = count::<T>(n);
    let mut in_regime = true;
    for m in 0..n {
        for k in m + 1..n {
            let delta = positions[m] - positions[k];
            in_regime &= delta.abs() > T::lit(0.5);
            value = value - T::lit(2.0) * pair_term(delta, u.value());
        }
    }
    FirstOrderEstimate { value, in_regime }
}

/// First-order estimate of `|ǎ_n(u)|²` for antenna `index` (zero-based):
/// `1 - 2 Σ_{m<n} sinc(k_mn/π) cos(k_mn u)`.
pub fn first_order_pattern_power<T: Real>(positions: &[T], index: usize, u: DirectionCosine<T>) -> T {
    positions[..index].iter().fold(T::one(), |acc, &xm| {
        acc - T::lit(2.0) * pair_term(xm - positions[index], u.value())
    })
}

#[inline]
fn pair_term<T: Real>(delta: T, u: T) -> T {
    coupling_coefficient(delta) * (T::TAU() * delta * u).cos()
}

/// Broadside optimum when only neighbour coupling is kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjacentOnlyBroadside<T> {
    /// Minimizer of `sinc(2d)` on `(0.5, 1)`.
    pub spacing: T,
    /// `sinc(2 · spacing)`, the most negative neighbour coupling.
    pub min_coupling: T,
    /// `1.44 N - 0.44`, the rounded closed form.
    pub directivity: T,
    /// `N - 2 (N - 1) min_coupling`, the same model without rounding.
    pub precise_directivity: T,
}

/// Uniform spacing and directivity of the neighbour-coupling-only broadside model.
pub fn adjacent_only_broadside<T: Real>(n_antennas: usize) -> AdjacentOnlyBroadside<T> {
    let spacing = golden_section_min(
        |d| coupling_coefficient(d),
        T::lit(0.5),
        T::one(),
        T::lit(1e-6),
    );
    let min_coupling = coupling_coefficient(spacing);
    let n = count::<T>(n_antennas);
    AdjacentOnlyBroadside {
        spacing,
        min_coupling,
        directivity: T::lit(1.44) * n - T::lit(0.44),
        precise_directivity: n - T::lit(2.0) * (n - T::one()) * min_coupling,
    }
}

fn golden_section_min<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, tol: T) -> T {
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    (lo + hi) / T::lit(2.0)
}

/// Vanishing-spacing limit `Σ_{n=1}^{N} (2n-1) P_{n-1}(u)²`.
pub fn legendre_directivity<T: Real>(n_antennas: usize, u: DirectionCosine<T>) -> T {
    if n_antennas == 0 {
        return T::zero();
    }
    LegendreTable::new(n_antennas - 1)
        .values(u.value())
        .into_iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, p)| acc + count::<T>(2 * k + 1) * p * p)
}
