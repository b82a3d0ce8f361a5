//! Impedance coupling between isotropic elements.
//!
//! For isotropic elements on a line the coupling matrix is the Gram matrix of
//! the element patterns `exp(-j 2π x_n u)` under `½∫_{-1}^{1} f ḡ du`, which
//! evaluates to `R_mn = sinc(2 (x_n - x_m))` with lengths in wavelengths.

use num_complex::Complex;

use crate::error::ModelError;
use crate::scalar::{count, Real};

/// Below this `|t|` sinc and its derivative are summed as Taylor series.
/// The series is summed until the next term drops below machine epsilon,
/// so it stays exact to working precision for every scalar type.
const SERIES_LIMIT: f64 = 0.25;

/// Largest diagonal loading tried before giving up on a factorization.
pub const MAX_JITTER: f64 = 1e-8;

/// `sin(πt) / (πt)`, exactly 1 at the origin.
pub fn sinc<T: Real>(t: T) -> T {
    if t == T::zero() {
        return T::one();
    }
    if t.abs() < T::lit(SERIES_LIMIT) {
        let x = T::PI() * t;
        let x2 = x * x;
        let mut term = T::one();
        let mut sum = T::one();
        let mut k = 1usize;
        loop {
            term = -term * x2 / (count::<T>(2 * k) * count::<T>(2 * k + 1));
            sum = sum + term;
            if term.abs() <= T::epsilon() * sum.abs() || k > 40 {
                return sum;
            }
            k += 1;
        }
    }
    let x = T::PI() * t;
    x.sin() / x
}

/// `d/dt sinc(t)`, zero at the origin.
pub fn sinc_derivative<T: Real>(t: T) -> T {
    if t == T::zero() {
        return T::zero();
    }
    let x = T::PI() * t;
    if t.abs() < T::lit(SERIES_LIMIT) {
        // π Σ_{k≥1} (-1)^k 2k x^{2k-1} / (2k+1)!
        let x2 = x * x;
        let mut power = -x / T::lit(6.0);
        let mut sum = T::lit(2.0) * power;
        let mut k = 1usize;
        loop {
            power = -power * x2 / (count::<T>(2 * k + 2) * count::<T>(2 * k + 3));
            let term = count::<T>(2 * k + 2) * power;
            sum = sum + term;
            if term.abs() <= T::epsilon() * sum.abs() || k > 40 {
                return T::PI() * sum;
            }
            k += 1;
        }
    }
    (x.cos() - x.sin() / x) / t
}

/// Coupling coefficient between two antennas `delta` wavelengths apart.
#[inline]
pub fn coupling_coefficient<T: Real>(delta: T) -> T {
    sinc(T::lit(2.0) * delta)
}

/// `d/dδ sinc(2δ) = [cos(2πδ) - sinc(2δ)] / δ`.
#[inline]
pub fn coupling_derivative<T: Real>(delta: T) -> T {
    T::lit(2.0) * sinc_derivative(T::lit(2.0) * delta)
}

/// Coupling matrix `R(x)` together with its (possibly diagonally loaded)
/// Cholesky factor.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix<T> {
    n: usize,
    entries: Vec<T>,
    chol: Option<Vec<T>>,
    jitter_applied: T,
}

impl<T: Real> CouplingMatrix<T> {
    /// Builds `R` for the given positions and factorizes it eagerly.
    pub fn new(positions: &[T]) -> Self {
        let n = positions.len();
        let mut entries = vec![T::zero(); n * n];
        for m in 0..n {
            entries[m * n + m] = T::one();
            for k in m + 1..n {
                let r = coupling_coefficient(positions[k] - positions[m]);
                entries[m * n + k] = r;
                entries[k * n + m] = r;
            }
        }
        let (chol, jitter_applied) = factorize_with_jitter(n, &entries);
        Self {
            n,
            entries,
            chol,
            jitter_applied,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, m: usize, n: usize) -> T {
        self.entries[m * self.n + n]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// Diagonal loading that was needed for the factorization (0 if none).
    pub fn jitter_applied(&self) -> T {
        self.jitter_applied
    }

    /// Row-major lower-triangular factor `L` with `L Lᵀ = R + jitter·I`.
    pub fn cholesky(&self) -> Result<&[T], ModelError> {
        self.chol.as_deref().ok_or(ModelError::SingularCoupling {
            max_jitter: MAX_JITTER,
        })
    }

    /// Solves `L y = b`.
    pub fn forward_solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>, ModelError> {
        let l = self.cholesky()?;
        Ok(forward_substitute(self.n, l, b))
    }

    /// Solves `R z = b` with two triangular solves.
    pub fn solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>, ModelError> {
        let l = self.cholesky()?;
        let y = forward_substitute(self.n, l, b);
        Ok(backward_substitute_transposed(self.n, l, &y))
    }

    /// `Σ_mn conj(v_m) R_mn v_n`, real for Hermitian `R`.
    pub fn quadratic_form(&self, v: &[Complex<T>]) -> T {
        let n = self.n;
        let mut acc = T::zero();
        for m in 0..n {
            let mut row = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                row = row + v[k] * self.entries[m * n + k];
            }
            acc = acc + (v[m].conj() * row).re;
        }
        acc
    }
}

/// Plain Cholesky first, then loading `ε = N·eps·max(1, tr/N)` grown ×10 up to
/// [`MAX_JITTER`].
fn factorize_with_jitter<T: Real>(n: usize, entries: &[T]) -> (Option<Vec<T>>, T) {
    if let Some(l) = cholesky_lower(n, entries, T::zero()) {
        return (Some(l), T::zero());
    }
    let nf = count::<T>(n.max(1));
    let trace = (0..n).fold(T::zero(), |acc, i| acc + entries[i * n + i]);
    let cap = T::lit(MAX_JITTER);
    let mut jitter = nf * T::epsilon() * (trace / nf).max(T::one());
    loop {
        let eps = jitter.min(cap);
        if let Some(l) = cholesky_lower(n, entries, eps) {
            return (Some(l), eps);
        }
        if eps >= cap {
            return (None, T::zero());
        }
        jitter = jitter * T::lit(10.0);
    }
}

/// Cholesky–Banachiewicz on `A + shift·I`. Returns `None` once a squared
/// pivot falls to `n·eps` of its diagonal entry, i.e. all digits cancelled.
pub(crate) fn cholesky_lower<T: Real>(n: usize, a: &[T], shift: T) -> Option<Vec<T>> {
    let rel = count::<T>(n.max(1)) * T::epsilon();
    let mut l = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            if i == j {
                s = s + shift;
            }
            for k in 0..j {
                s = s - l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > rel * (a[i * n + i] + shift)) || !s.is_finite() {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Some(l)
}

pub(crate) fn forward_substitute<T: Real>(
    n: usize,
    l: &[T],
    b: &[Complex<T>],
) -> Vec<Complex<T>> {
    let mut y: Vec<Complex<T>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s = s - y[k] * l[i * n + k];
        }
        y.push(s / l[i * n + i]);
    }
    y
}

fn backward_substitute_transposed<T: Real>(
    n: usize,
    l: &[T],
    y: &[Complex<T>],
) -> Vec<Complex<T>> {
    let mut z = y.to_vec();
    for i in (0..n).rev() {
        let mut s = z[i];
        for k in i + 1..n {
            s = s - z[k] * l[k * n + i];
        }
        z[i] = s / l[i * n + i];
    }
    z
}
