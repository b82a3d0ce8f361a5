//! Steering vectors, directivity and the orthonormalized pattern basis.
//!
//! Directivity toward `u` after optimal excitation is `G_u(x) = aᴴ R⁻¹ a`.
//! It is available through the direct solve ([`directivity`]) and through the
//! effective steering vector `ǎ = L⁻¹ a` ([`effective_steering`]), whose squared
//! norm is the same quantity. [`gram_schmidt_patterns`] builds `ǎ` a third way,
//! by orthonormalizing sampled patterns under a quadrature inner product.

use num_complex::Complex;

use crate::coupling::CouplingMatrix;
use crate::direction::DirectionCosine;
use crate::error::ModelError;
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;

/// Threshold on the Gram-Schmidt normalization denominator.
pub const DEGENERATE_NORM: f64 = 1e-14;

/// Complex excitation weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationVector<T> {
    pub weights: Vec<Complex<T>>,
    pub norm: T,
}

impl<T: Real> ExcitationVector<T> {
    pub fn new(weights: Vec<Complex<T>>) -> Self {
        let norm = weights
            .iter()
            .fold(T::zero(), |acc, w| acc + w.norm_sqr())
            .sqrt();
        Self { weights, norm }
    }

    /// Scales to unit 2-norm.
    pub fn normalized(self) -> Self {
        let scale = self.norm;
        Self::new(self.weights.into_iter().map(|w| w / scale).collect())
    }
}

/// Steering vector expressed in the orthonormal pattern basis, `ǎ = L⁻¹ a`.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveSteering<T> {
    pub values: Vec<Complex<T>>,
    pub squared_norm: T,
}

/// Directivity together with the conditioning diagnostic of its evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub directivity: T,
    pub jitter_applied: T,
}

/// `a_n = exp(-j 2π x_n u)`.
pub fn steering_vector<T: Real>(u: DirectionCosine<T>, positions: &[T]) -> Vec<Complex<T>> {
    positions
        .iter()
        .map(|&x| element_pattern(u.value(), x))
        .collect()
}

#[inline]
pub(crate) fn element_pattern<T: Real>(u: T, x: T) -> Complex<T> {
    let phase = T::TAU() * x * u;
    Complex::new(phase.cos(), -phase.sin())
}

/// Maximum directivity `aᴴ R⁻¹ a` over excitations.
pub fn directivity<T: Real>(u: DirectionCosine<T>, positions: &[T]) -> Result<T, ModelError> {
    evaluate(u, positions).map(|e| e.directivity)
}

/// [`directivity`] plus the diagonal loading used.
pub fn evaluate<T: Real>(
    u: DirectionCosine<T>,
    positions: &[T],
) -> Result<Evaluation<T>, ModelError> {
    let coupling = CouplingMatrix::new(positions);
    let directivity = directivity_with(&coupling, u, positions)?;
    Ok(Evaluation {
        directivity,
        jitter_applied: coupling.jitter_applied(),
    })
}

/// Directivity against an already factorized coupling matrix.
pub fn directivity_with<T: Real>(
    coupling: &CouplingMatrix<T>,
    u: DirectionCosine<T>,
    positions: &[T],
) -> Result<T, ModelError> {
    let a = steering_vector(u, positions);
    let z = coupling.solve(&a)?;
    Ok(a.iter()
        .zip(&z)
        .fold(T::zero(), |acc, (ai, zi)| acc + (ai.conj() * zi).re))
}

/// `w* = R⁻¹ a / ‖R⁻¹ a‖₂`.
pub fn optimal_excitation<T: Real>(
    u: DirectionCosine<T>,
    positions: &[T],
) -> Result<ExcitationVector<T>, ModelError> {
    let coupling = CouplingMatrix::new(positions);
    let a = steering_vector(u, positions);
    let z = coupling.solve(&a)?;
    Ok(ExcitationVector::new(z).normalized())
}

/// `|aᴴ w|² / (wᴴ R w)` for an arbitrary excitation.
pub fn rayleigh_quotient<T: Real>(
    u: DirectionCosine<T>,
    positions: &[T],
    weights: &[Complex<T>],
) -> T {
    let a = steering_vector(u, positions);
    let gain = a
        .iter()
        .zip(weights)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (ai, wi)| {
            acc + ai.conj() * wi
        })
        .norm_sqr();
    gain / CouplingMatrix::new(positions).quadratic_form(weights)
}

/// `ǎ = L⁻¹ a` by forward substitution.
pub fn effective_steering<T: Real>(
    u: DirectionCosine<T>,
    positions: &[T],
) -> Result<EffectiveSteering<T>, ModelError> {
    let coupling = CouplingMatrix::new(positions);
    let values = coupling.forward_solve(&steering_vector(u, positions))?;
    let squared_norm = values.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr());
    Ok(EffectiveSteering {
        values,
        squared_norm,
    })
}

/// Orthonormal pattern functions sampled on the quadrature nodes.
///
/// Row `n` is `ǎ_n(u_i)`; each row is obtained from `a_n` by removing its
/// projections on the previous rows and normalizing, with inner products
/// `½ Σ w_i f_i conj(g_i)`.
pub fn gram_schmidt_patterns<T: Real>(
    rule: &GaussLegendre<T>,
    positions: &[T],
) -> Result<Vec<Vec<Complex<T>>>, ModelError> {
    let mut rows: Vec<Vec<Complex<T>>> = Vec::with_capacity(positions.len());
    for (index, &x) in positions.iter().enumerate() {
        let a: Vec<Complex<T>> = rule
            .nodes()
            .iter()
            .map(|&u| element_pattern(u, x))
            .collect();
        let mut residual = a.clone();
        for prev in &rows {
            let coeff = rule.inner_product(&a, prev);
            for (r, p) in residual.iter_mut().zip(prev) {
                *r = *r - coeff * p;
            }
        }
        let norm = rule.inner_product(&residual, &residual).re.sqrt();
        if !(norm >= T::lit(DEGENERATE_NORM)) {
            return Err(ModelError::DegenerateBasis {
                index,
                norm: norm.as_f64(),
            });
        }
        rows.push(residual.into_iter().map(|r| r / norm).collect());
    }
    Ok(rows)
}

/// `½ ∫ G_u(x) du` by quadrature; equals `N` for any non-degenerate geometry.
pub fn average_directivity<T: Real>(
    rule: &GaussLegendre<T>,
    positions: &[T],
) -> Result<T, ModelError> {
    let coupling = CouplingMatrix::new(positions);
    let mut total = T::zero();
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        let dir = DirectionCosine::new(u)?;
        total = total + w * directivity_with(&coupling, dir, positions)?;
    }
    Ok(total * T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn u(v: f64) -> DirectionCosine<f64> {
        DirectionCosine::new(v).unwrap()
    }

    #[test]
    fn steering_examples() {
        let a = steering_vector(u(0.0), &[0.0, 0.3, -1.7]);
        assert!(a.iter().all(|z| *z == Complex::new(1.0, 0.0)));
        let a = steering_vector(u(1.0), &[0.0, 0.5]);
        assert!((a[1] - Complex::new(-1.0, 0.0)).norm() < 1e-15);
        let a = steering_vector(u(0.5), &[0.0, 0.72]);
        let expected = Complex::from_polar(1.0, -0.72 * PI);
        assert!((a[1] - expected).norm() < 1e-15);
        assert!(a.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn half_wavelength_ula_has_directivity_n() {
        let x = [0.0, 0.5, 1.0, 1.5, 2.0];
        for &v in &[-1.0, -0.3, 0.0, 0.41, 1.0] {
            assert!((directivity(u(v), &x).unwrap() - 5.0).abs() < 1e-9);
        }
    }

    #[test]
    fn two_antenna_broadside_value() {
        // 2 / (1 + sinc(1.44)), sinc(1.44) = -0.21713315484669274
        let g = directivity(u(0.0), &[0.0, 0.72]).unwrap();
        assert!((g - 2.554_712_863_856_616).abs() < 1e-12);
    }

    #[test]
    fn excitation_for_uncoupled_array() {
        let x = [0.0, 0.5, 1.0];
        let w = optimal_excitation(u(0.3), &x).unwrap();
        let a = steering_vector(u(0.3), &x);
        let s = 3f64.sqrt();
        for (wi, ai) in w.weights.iter().zip(&a) {
            assert!((wi - ai / s).norm() < 1e-12);
        }
        assert!((w.norm - 1.0).abs() < 1e-12);

        let w = optimal_excitation(u(0.8), &[0.0]).unwrap();
        assert!((w.weights[0] - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn excitation_attains_directivity() {
        let x = [0.0, 0.25];
        let w = optimal_excitation(u(1.0), &x).unwrap();
        let q = rayleigh_quotient(u(1.0), &x, &w.weights);
        let g = directivity(u(1.0), &x).unwrap();
        assert!(((q - g) / g).abs() < 1e-9);
    }

    #[test]
    fn effective_steering_identities() {
        let x = [0.0, 0.5, 1.5];
        let e = effective_steering(u(0.7), &x).unwrap();
        let a = steering_vector(u(0.7), &x);
        for (ei, ai) in e.values.iter().zip(&a) {
            assert!((ei - ai).norm() < 1e-12);
        }
        let e = effective_steering(u(0.7), &[0.0]).unwrap();
        assert_eq!(e.values, vec![Complex::new(1.0, -0.0)]);

        let x = [0.0, 0.31, -0.46];
        let e = effective_steering(u(-0.2), &x).unwrap();
        let g = directivity(u(-0.2), &x).unwrap();
        assert!(((e.squared_norm - g) / g).abs() < 1e-9);
    }

    #[test]
    fn gram_schmidt_two_antennas_closed_form() {
        let rule = GaussLegendre::new(256).unwrap();
        let x2 = 0.37f64;
        let rows = gram_schmidt_patterns(&rule, &[0.0, x2]).unwrap();
        let s = crate::coupling::coupling_coefficient(x2);
        for (i, &ui) in rule.nodes().iter().enumerate() {
            assert!((rows[0][i] - Complex::new(1.0, 0.0)).norm() < 1e-12);
            let a2 = element_pattern(ui, x2);
            let expected = (a2 - s) / (1.0 - s * s).sqrt();
            assert!((rows[1][i] - expected).norm() < 1e-10);
        }
    }

    #[test]
    fn gram_schmidt_matches_cholesky_route() {
        let rule = GaussLegendre::new(256).unwrap();
        let x = [0.0, 0.3, -0.45, 1.2];
        let rows = gram_schmidt_patterns(&rule, &x).unwrap();
        for (i, &ui) in rule.nodes().iter().enumerate().step_by(7) {
            let e = effective_steering(u(ui), &x).unwrap();
            for n in 0..x.len() {
                assert!((rows[n][i] - e.values[n]).norm() < 1e-8);
            }
        }
        for m in 0..x.len() {
            for n in 0..x.len() {
                let ip = rule.inner_product(&rows[m], &rows[n]);
                let expected = if m == n { 1.0 } else { 0.0 };
                assert!((ip - expected).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn gram_schmidt_degenerate() {
        let rule = GaussLegendre::new(64).unwrap();
        assert!(matches!(
            gram_schmidt_patterns(&rule, &[0.0, 0.4, 0.4]),
            Err(ModelError::DegenerateBasis { index: 2, .. })
        ));
    }

    #[test]
    fn average_directivity_is_n() {
        let rule = GaussLegendre::new(256).unwrap();
        let avg = average_directivity(&rule, &[0.0f64, 0.2, 0.55, -0.35]).unwrap();
        assert!((avg - 4.0).abs() < 1e-6);
    }

    #[test]
    fn singular_coupling_surfaces() {
        assert!(matches!(
            directivity(u(0.2), &[0.0, 0.3, f64::NAN]),
            Err(ModelError::SingularCoupling { .. })
        ));
    }

    #[test]
    fn single_precision_instantiation() {
        let x = [0.0f32, 0.5, 1.0];
        let g = directivity(DirectionCosine::new(0.3f32).unwrap(), &x).unwrap();
        assert!((g - 3.0).abs() < 1e-4);
    }
}
