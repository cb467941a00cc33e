//! Prime factorization by bounded trial division, p-adic valuations, and
//! the log-degree of a factored order.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// prime → exponent, primes ascending.
pub type PrimeFactorization = BTreeMap<u64, u32>;

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Factor `n ≥ 1` by trial division up to `bound`.
///
/// A cofactor surviving all candidates ≤ bound is prime whenever it is
/// ≤ bound²; anything larger is refused explicitly instead of stalling.
pub fn factorize_with_bound(n: &BigUint, bound: u64) -> Result<PrimeFactorization> {
    assert!(!n.is_zero(), "factorization of zero is undefined");
    let mut rest = n.clone();
    let mut out = PrimeFactorization::new();
    let mut push = |p: u64, rest: &mut BigUint| {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&*rest % &bp).is_zero() {
            *rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.insert(p, e);
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    // 6k ± 1 wheel
    let mut p = 5u64;
    while p <= bound && BigUint::from(p) * BigUint::from(p) <= rest {
        push(p, &mut rest);
        push(p + 2, &mut rest);
        p += 6;
    }
    if rest.is_one() {
        return Ok(out);
    }
    let bound_sq = BigUint::from(bound) * BigUint::from(bound);
    if BigUint::from(p) * BigUint::from(p) > rest || rest <= bound_sq {
        // no divisor ≤ min(bound, sqrt): the cofactor is prime
        let p = rest.to_u64().ok_or(Error::FactorBoundExceeded {
            n: n.clone(),
            bound,
        })?;
        *out.entry(p).or_insert(0) += 1;
        return Ok(out);
    }
    Err(Error::FactorBoundExceeded {
        n: n.clone(),
        bound,
    })
}

pub fn factorize(n: &BigUint) -> Result<PrimeFactorization> {
    factorize_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// v_p(order): the length of the localization at p of Z/order.
pub fn p_length(order: &BigUint, p: u64) -> u32 {
    assert!(p >= 2, "p must be prime");
    let bp = BigUint::from(p);
    let mut rest = order.clone();
    let mut e = 0u32;
    while !rest.is_zero() && (&rest % &bp).is_zero() {
        rest /= &bp;
        e += 1;
    }
    e
}

/// Σ e·log p over the factorization: the logarithm of the reconstructed
/// order, assembled prime by prime.
pub fn log_of_factorization(f: &PrimeFactorization) -> f64 {
    let parts: Vec<f64> = f
        .iter()
        .map(|(&p, &e)| f64::from(e) * (p as f64).ln())
        .collect();
    crate::num::pairwise_sum(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u64) -> PrimeFactorization {
        factorize(&BigUint::from(n)).unwrap()
    }

    #[test]
    fn desk_examples() {
        assert_eq!(fac(12), BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(fac(1), BTreeMap::new());
        assert_eq!(fac(97), BTreeMap::from([(97, 1)]));
    }

    #[test]
    fn product_reconstructs() {
        for n in [2u64, 30, 360, 1009 * 1013, 2u64.pow(20) * 3] {
            let f = fac(n);
            let back: u64 = f.iter().map(|(&p, &e)| p.pow(e)).product();
            assert_eq!(back, n);
        }
    }

    #[test]
    fn large_prime_cofactor_within_bound_squared() {
        // 1e6 < 1000003 · 1000033 < 1e12: each cofactor certified prime
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        // composite cofactor above the bound is refused
        assert!(matches!(
            factorize(&n),
            Err(Error::FactorBoundExceeded { .. })
        ));
        // a single large prime below bound² is accepted
        let f = factorize(&BigUint::from(1_000_000_007u64)).unwrap();
        assert_eq!(f, BTreeMap::from([(1_000_000_007, 1)]));
    }

    #[test]
    fn p_length_examples_and_additivity() {
        assert_eq!(p_length(&BigUint::from(8u32), 2), 3);
        assert_eq!(p_length(&BigUint::from(6u32), 5), 0);
        assert_eq!(p_length(&BigUint::from(25u32), 5), 2);
        let a = BigUint::from(12u32);
        let b = BigUint::from(18u32);
        assert_eq!(p_length(&(&a * &b), 2), p_length(&a, 2) + p_length(&b, 2));
    }

    #[test]
    fn log_degree_matches_ln() {
        let f = fac(12);
        assert!((log_of_factorization(&f) - 12f64.ln()).abs() < 1e-12);
    }
}
