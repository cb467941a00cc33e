//! Scalar abstraction and deterministic numerical primitives shared by the
//! analytic modules: pairwise summation and Gauss-Legendre nodes.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating scalar the analytic layer is generic over.
///
/// Anything float-like with constants and `f64` conversions qualifies; the
/// crate-level alias picks `f64` for the shipped artifact.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts into any Real")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("grid sizes fit in any Real")
    }

    fn of_i64(n: i64) -> Self {
        Self::from_i64(n).expect("small integers fit in any Real")
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

/// Below this length a straight loop is cheaper than recursion and the
/// rounding error over so few terms is negligible.
const NAIVE_SUM_THRESHOLD: usize = 64;

/// Pairwise (tree) summation.
///
/// Fixed association order makes reductions bit-identical no matter how the
/// summands were produced, and the error constant grows like log n instead
/// of n.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    if xs.len() <= NAIVE_SUM_THRESHOLD {
        let mut acc = T::zero();
        for &x in xs {
            acc = acc + x;
        }
        acc
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

/// Pairwise summation of complex samples, componentwise association order.
pub fn pairwise_sum_cx<T: Real>(xs: &[Cx<T>]) -> Cx<T> {
    if xs.len() <= NAIVE_SUM_THRESHOLD {
        let mut acc = Cx::new(T::zero(), T::zero());
        for &x in xs {
            acc = acc + x;
        }
        acc
    } else {
        let mid = xs.len() / 2;
        pairwise_sum_cx(&xs[..mid]) + pairwise_sum_cx(&xs[mid..])
    }
}

/// Legendre polynomial value and derivative at `x` by the three-term
/// recurrence; the derivative uses the standard identity
/// (x² − 1) Pn' = n (x Pn − P_{n−1}).
fn legendre_pd<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 1..n {
        let kf = T::of_usize(k);
        let two_k1 = kf + kf + T::one();
        let p2 = (two_k1 * x * p1 - kf * p0) / (kf + T::one());
        p0 = p1;
        p1 = p2;
    }
    let nf = T::of_usize(n);
    let dp = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, dp)
}

/// Gauss-Legendre nodes and weights on [−1, 1], ascending nodes.
///
/// Computed at runtime by Newton iteration from the Chebyshev initial guess
/// so the rule stays exact in whatever precision `T` carries.
pub fn gauss_legendre<T: Real>(n: usize) -> Vec<(T, T)> {
    assert!(n >= 1, "quadrature rule needs at least one node");
    let nf = T::of_usize(n);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let theta = T::PI() * (T::of_usize(k) + T::of(0.75)) / (nf + T::of(0.5));
        let mut x = theta.cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pd(n, x);
            let dx = p / dp;
            x = x - dx;
            if dx.abs() <= T::epsilon() * (T::one() + x.abs()) {
                break;
            }
        }
        let (_, dp) = legendre_pd(n, x);
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        out.push((x, w));
    }
    out.reverse(); // the Chebyshev guesses run from +1 down to −1
    out
}

/// Gauss-Legendre rule transported to [a, b].
pub fn gauss_legendre_on<T: Real>(a: T, b: T, n: usize) -> Vec<(T, T)> {
    let half = T::of(0.5);
    let mid = (a + b) * half;
    let rad = (b - a) * half;
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| (mid + rad * x, rad * w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 45.0);
    }

    #[test]
    fn pairwise_handles_empty_and_long() {
        assert_eq!(pairwise_sum::<f64>(&[]), 0.0);
        let xs: Vec<f64> = vec![0.1; 10_000];
        assert!((pairwise_sum(&xs) - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // an n-point rule is exact through degree 2n−1
        let rule = gauss_legendre::<f64>(8);
        let int_x14: f64 = rule.iter().map(|&(x, w)| w * x.powi(14)).sum();
        assert!((int_x14 - 2.0 / 15.0).abs() < 1e-14, "{int_x14}");
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_on_interval() {
        let rule = gauss_legendre_on(0.0_f64, 1.0, 24);
        let val: f64 = rule.iter().map(|&(x, w)| w / (1.0 + x * x)).sum();
        assert!((val - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn nodes_ascend_and_are_symmetric() {
        let rule = gauss_legendre::<f64>(17);
        for pair in rule.windows(2) {
            assert!(pair[0].0 < pair[1].0);
        }
        for k in 0..rule.len() {
            let (x, w) = rule[k];
            let (x2, w2) = rule[rule.len() - 1 - k];
            assert!((x + x2).abs() < 1e-14);
            assert!((w - w2).abs() < 1e-14);
        }
    }
}
