//! Roots of integer polynomials on the complex fiber. Multiplicities are
//! extracted exactly by a square-free decomposition over Z before any
//! floating-point work, so simultaneous iteration only ever sees simple
//! roots.

use crate::error::{Error, Result};
use crate::num::Cx;
use crate::tolerances::TOL_ROOT_RESIDUAL;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

fn trimmed(p: &[BigInt]) -> Vec<BigInt> {
    let mut v = p.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn degree(p: &[BigInt]) -> usize {
    debug_assert!(!p.is_empty() && !p.last().unwrap().is_zero());
    p.len() - 1
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn content(p: &[BigInt]) -> BigUint {
    p.iter().fold(BigUint::zero(), |acc, c| {
        num_integer::gcd(acc, c.magnitude().clone())
    })
}

/// Divide out the content and make the leading coefficient positive.
fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let p = trimmed(p);
    if p.is_empty() {
        return p;
    }
    let c = BigInt::from(content(&p));
    let mut out: Vec<BigInt> = p.iter().map(|x| x / &c).collect();
    if out.last().unwrap().is_negative() {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

/// lc(q)^(deg p − deg q + 1) · p mod q, staying in Z[x].
fn pseudo_rem(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut r = p.to_vec();
    let dq = degree(q);
    let lq = q.last().unwrap().clone();
    while r.len() > dq {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - dq;
        for x in &mut r {
            *x = &*x * &lq;
        }
        for (i, c) in q.iter().enumerate() {
            r[shift + i] -= c * &lr;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient (primitive PRS).
pub fn poly_gcd(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(p);
    let mut b = primitive(q);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(&pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Exact division; the panics are unreachable when q | p over Q and q is
/// primitive (Gauss).
fn exact_div(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut r = trimmed(p);
    if r.is_empty() {
        return r;
    }
    let dq = degree(q);
    let lq = q.last().unwrap();
    let mut quot = vec![BigInt::zero(); r.len() - dq];
    while r.len() > dq {
        let (c, rem) = num_integer::div_rem(r.last().unwrap().clone(), lq.clone());
        assert!(rem.is_zero(), "non-exact polynomial division");
        let shift = r.len() - 1 - dq;
        quot[shift] = c.clone();
        for (i, qc) in q.iter().enumerate() {
            r[shift + i] -= qc * &c;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    assert!(r.is_empty(), "non-exact polynomial division");
    quot
}

/// Yun decomposition: returns primitive pairwise-coprime square-free
/// factors with their multiplicities, so p = content · Π fᵢ^mᵢ up to sign.
pub fn squarefree_decomposition(p: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
    let a = primitive(p);
    if a.is_empty() || degree(&a) == 0 {
        return Vec::new();
    }
    let g = poly_gcd(&a, &derivative(&a));
    if degree(&g) == 0 {
        return vec![(a, 1)];
    }
    let mut b = exact_div(&a, &g);
    let mut d: Vec<BigInt> = {
        let c = exact_div(&derivative(&a), &g);
        sub(&c, &derivative(&b))
    };
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&b) > 0 {
        let gi = poly_gcd(&b, &d);
        if degree(&gi) > 0 {
            out.push((gi.clone(), i));
        }
        b = exact_div(&b, &gi);
        let c = exact_div(&d, &gi);
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

fn sub(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len().max(q.len())];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in q.iter().enumerate() {
        out[i] -= c;
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// All roots of a polynomial with simple roots, by Durand-Kerner iteration
/// from a spiral start. Coefficients ascending; the result is unordered.
pub fn durand_kerner(coeffs: &[Cx<f64>]) -> Result<Vec<Cx<f64>>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let lead = *c.last().unwrap();
    for x in &mut c {
        *x /= lead;
    }
    let n = c.len() - 1;
    let eval = |x: Cx<f64>| c.iter().rev().fold(Cx::new(0.0, 0.0), |acc, k| acc * x + k);
    let seed = Cx::new(0.4, 0.9);
    let mut xs: Vec<Cx<f64>> = (0..n)
        .scan(Cx::new(1.0, 0.0), |s, _| {
            *s *= seed;
            Some(*s)
        })
        .collect();
    for _ in 0..200 {
        let mut shift = 0.0_f64;
        for j in 0..n {
            let mut denom = Cx::new(1.0, 0.0);
            for k in 0..n {
                if k != j {
                    denom *= xs[j] - xs[k];
                }
            }
            let delta = eval(xs[j]) / denom;
            xs[j] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-15 {
            break;
        }
    }
    for &x in &xs {
        let scale = x.norm().max(1.0).powi(n as i32);
        let resid = eval(x).norm();
        // NaN must land on the error branch, so keep the comparison positive
        let settled = resid <= TOL_ROOT_RESIDUAL * scale;
        if !settled {
            return Err(Error::RootsFailed(format!(
                "residual {resid:.3e} at root estimate {x} (degree {n})"
            )));
        }
    }
    Ok(xs)
}

/// Complex roots of an integer polynomial with exact multiplicities.
pub fn roots_with_multiplicity(p: &[BigInt]) -> Result<Vec<(Cx<f64>, usize)>> {
    let prim = primitive(p);
    if prim.is_empty() || degree(&prim) == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut counted = 0;
    for (factor, mult) in squarefree_decomposition(&prim) {
        let cf: Vec<Cx<f64>> = factor
            .iter()
            .map(|c| Cx::new(c.to_f64().expect("coefficient out of f64 range"), 0.0))
            .collect();
        for r in durand_kerner(&cf)? {
            out.push((r, mult));
            counted += mult;
        }
    }
    debug_assert_eq!(counted, degree(&prim));
    Ok(out)
}
