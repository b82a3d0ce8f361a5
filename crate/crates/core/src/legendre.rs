//! Legendre polynomials by the Bonnet recurrence.

use crate::scalar::{count, Real};

/// Evaluator for `P_0 .. P_max_order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegendreTable {
    max_order: usize,
}

impl LegendreTable {
    pub fn new(max_order: usize) -> Self {
        Self { max_order }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// `[P_0(u), …, P_max_order(u)]`.
    pub fn values<T: Real>(&self, u: T) -> Vec<T> {
        let mut p = Vec::with_capacity(self.max_order + 1);
        p.push(T::one());
        if self.max_order >= 1 {
            p.push(u);
        }
        // (n+1) P_{n+1} = (2n+1) u P_n - n P_{n-1}
        for n in 1..self.max_order {
            let next = (count::<T>(2 * n + 1) * u * p[n] - count::<T>(n) * p[n - 1])
                / count::<T>(n + 1);
            p.push(next);
        }
        p
    }

    /// `P_n(u)` for `n <= max_order`.
    pub fn eval<T: Real>(&self, n: usize, u: T) -> T {
        assert!(n <= self.max_order, "order {n} above table limit");
        legendre(n, u)
    }
}

/// `P_n(u)` alone.
pub fn legendre<T: Real>(n: usize, u: T) -> T {
    legendre_with_derivative(n, u).0
}

/// `(P_n(u), P_n'(u))`; the derivative uses `(u²-1) P_n' = n (u P_n - P_{n-1})`
/// away from the endpoints and `n(n+1)/2 · (±1)^{n+1}` at them.
pub fn legendre_with_derivative<T: Real>(n: usize, u: T) -> (T, T) {
    if n == 0 {
        return (T::one(), T::zero());
    }
    let (mut prev, mut cur) = (T::one(), u);
    for k in 1..n {
        let next = (count::<T>(2 * k + 1) * u * cur - count::<T>(k) * prev) / count::<T>(k + 1);
        prev = cur;
        cur = next;
    }
    let nf = count::<T>(n);
    let denom = u * u - T::one();
    let deriv = if denom == T::zero() {
        let end = nf * (nf + T::one()) / T::lit(2.0);
        if u > T::zero() || n % 2 == 1 {
            end
        } else {
            -end
        }
    } else {
        nf * (u * cur - prev) / denom
    };
    (cur, deriv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        let t = LegendreTable::new(4);
        let p = t.values(0.3f64);
        assert_eq!(p[0], 1.0);
        assert_eq!(p[1], 0.3);
        assert!((p[2] - (3.0 * 0.09 - 1.0) / 2.0).abs() < 1e-15);
        assert!((p[3] - (5.0 * 0.027 - 3.0 * 0.3) / 2.0).abs() < 1e-15);
        assert!((p[4] - (35.0 * 0.0081 - 30.0 * 0.09 + 3.0) / 8.0).abs() < 1e-15);
        assert_eq!(t.eval(2, 0.0f64), -0.5);
    }

    #[test]
    fn endpoint_values() {
        for n in 0..12 {
            assert!((legendre(n, 1.0f64) - 1.0).abs() < 1e-14);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((legendre(n, -1.0f64) - sign).abs() < 1e-14);
        }
    }

    #[test]
    fn recurrence_holds() {
        let t = LegendreTable::new(20);
        for i in 0..=40 {
            let u = -1.0 + i as f64 * 0.05;
            let p = t.values(u);
            for n in 1..20 {
                let lhs = (n as f64 + 1.0) * p[n + 1];
                let rhs = (2.0 * n as f64 + 1.0) * u * p[n] - n as f64 * p[n - 1];
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for n in 0..8 {
            for &u in &[-1.0f64, -0.6, 0.0, 0.35, 0.99, 1.0] {
                let h = 1e-6;
                let (lo, hi) = ((u - h).max(-1.0), (u + h).min(1.0));
                let fd = (legendre(n, hi) - legendre(n, lo)) / (hi - lo);
                let (_, d) = legendre_with_derivative(n, u);
                assert!((d - fd).abs() < 1e-4 * (1.0 + d.abs()), "n={n} u={u}");
            }
        }
    }
}
