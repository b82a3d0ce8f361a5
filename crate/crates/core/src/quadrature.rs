//! Gauss-Legendre rules on `[-1, 1]`, used to evaluate pattern inner products
//! `½∫ f ḡ du` numerically for validation.

use num_complex::Complex;

use crate::error::ModelError;
use crate::legendre::legendre_with_derivative;
use crate::scalar::{count, Real};

/// Default node count for inner products and averages.
pub const DEFAULT_NODES: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// `n`-point rule; nodes ascending.
    pub fn new(n: usize) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::EmptyQuadrature);
        }
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = count::<T>(n);
        let half = T::lit(0.5);
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let theta = T::PI() * (count::<T>(i + 1) - T::lit(0.25)) / (nf + half);
            let mut x = theta.cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x = x - step;
                if step.abs() <= T::lit(4.0) * T::epsilon() {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_{-1}^{1} f(u) du`.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }

    /// `½ Σ_i w_i f_i conj(g_i)` for functions sampled on the nodes.
    pub fn inner_product(&self, f: &[Complex<T>], g: &[Complex<T>]) -> Complex<T> {
        let sum = f
            .iter()
            .zip(g)
            .zip(&self.weights)
            .fold(Complex::new(T::zero(), T::zero()), |acc, ((&a, &b), &w)| {
                acc + a * b.conj() * w
            });
        sum * T::lit(0.5)
    }
}
