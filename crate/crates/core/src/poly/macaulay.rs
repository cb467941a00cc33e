//! Order of a zero-dimensional quotient Z[x_1..x_n]/(g_1..g_k) through
//! truncated multiplication matrices. At degree bound D the initial columns
//! are the expansions of m*g_i over all monomials with deg m + deg g_i < D.
//! That shift lattice can sit strictly inside (ideal) ∩ (window) forever:
//! when a leading coefficient collapses mod p, low-degree ideal members only
//! arise through cancellations that pass above the window, so the naive
//! cokernel stabilizes at a wrong order. Each window is therefore closed
//! under monomial shifts of its own echelon basis before the cokernel is
//! measured; a combination discovered inside the window (such as the
//! degree-dropped reduction of a generator) then contributes its shifts too.
//! In one variable this closure reaches (ideal) ∩ (window) exactly, because
//! Euclidean elimination between univariate generators never needs
//! intermediates above the largest generator degree. Acceptance still needs
//! two consecutive bounds with equal finite cokernel order plus a full-rank
//! certificate over Q, which proves 1 lies in the ideal rationally, hence
//! the quotient group is finite.

use crate::error::{Error, Result};
use crate::exact::{cokernel_order, rank_over_q, CokernelOrder, IntMatrix};
use crate::poly::multipoly::{monomials_below, Monomial, MultiPoly};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Extra degrees tried past the initial bound 1 + sum of generator degrees.
const DEGREE_SLACK: usize = 8;

/// Closure rounds allowed per window; Noetherian ascent stabilizes far
/// earlier on desk-scale inputs, the cap only guards cost.
const SATURATION_ROUNDS: usize = 64;

pub struct MacaulayPresentation {
    pub degree_bound: usize,
    /// Monomials of degree < degree_bound, ascending graded lex; rows.
    pub basis: Vec<Monomial>,
    /// Column j is one product m*g_i expanded over the basis. Columns span
    /// a sublattice of (ideal) ∩ (window); `quotient_order` saturates it.
    pub matrix: IntMatrix,
}

pub fn macaulay_presentation(gens: &[MultiPoly], degree_bound: usize) -> MacaulayPresentation {
    assert!(!gens.is_empty());
    let nvars = gens[0].nvars();
    for g in gens {
        assert_eq!(g.nvars(), nvars, "generators must share one variable set");
    }
    let basis = monomials_below(nvars, degree_bound);
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let dg = g.total_degree().unwrap_or(0) as usize;
        for m in monomials_below(nvars, degree_bound.saturating_sub(dg)) {
            let prod = g.mul_monomial(&m);
            let col = prod
                .terms()
                .map(|(mon, c)| (index[mon], c.clone()))
                .collect();
            columns.push(col);
        }
    }
    let mut matrix = IntMatrix::zero(basis.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            matrix.set(*i, j, c.clone());
        }
    }
    MacaulayPresentation {
        degree_bound,
        basis,
        matrix,
    }
}

/// Echelon basis of the integer lattice spanned by `vecs`: repeated gcd
/// elimination leaves, per coordinate from the highest monomial down, at
/// most one vector with a nonzero entry there and none above it. Returned
/// as (pivot coordinate, vector) with strictly decreasing pivots.
fn lattice_echelon(dim: usize, mut vecs: Vec<Vec<BigInt>>) -> Vec<(usize, Vec<BigInt>)> {
    let mut basis = Vec::new();
    for row in (0..dim).rev() {
        loop {
            vecs.retain(|v| v.iter().any(|c| !c.is_zero()));
            let mut min: Option<usize> = None;
            for (i, v) in vecs.iter().enumerate() {
                if v[row].is_zero() {
                    continue;
                }
                min = match min {
                    Some(j) if vecs[j][row].magnitude() <= v[row].magnitude() => Some(j),
                    _ => Some(i),
                };
            }
            let Some(p) = min else { break };
            let pivot_row = vecs[p].clone();
            let mut reduced_any = false;
            for (i, v) in vecs.iter_mut().enumerate() {
                if i == p || v[row].is_zero() {
                    continue;
                }
                reduced_any = true;
                let q = &v[row] / &pivot_row[row];
                for (vk, pk) in v.iter_mut().zip(&pivot_row) {
                    *vk -= pk * &q;
                }
            }
            if reduced_any {
                continue;
            }
            let mut pivot = vecs.swap_remove(p);
            if pivot[row].sign() == Sign::Minus {
                for c in pivot.iter_mut() {
                    *c = -std::mem::take(c);
                }
            }
            basis.push((row, pivot));
            break;
        }
    }
    basis
}

/// Whether `v` lies in the lattice spanned by an echelon `basis`; exact
/// back-substitution from the highest coordinate down.
fn in_lattice(dim: usize, basis: &[(usize, Vec<BigInt>)], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    let mut next = basis.iter().peekable();
    for row in (0..dim).rev() {
        if next.peek().map(|(p, _)| *p) == Some(row) {
            let (_, b) = next.next().unwrap();
            if !v[row].is_zero() {
                let (q, r) = v[row].div_rem(&b[row]);
                if !r.is_zero() {
                    return false;
                }
                for (vk, bk) in v.iter_mut().zip(b) {
                    *vk -= bk * &q;
                }
            }
        } else if !v[row].is_zero() {
            return false;
        }
    }
    true
}

/// Close the window lattice under in-window monomial shifts of its own
/// echelon basis. `None` when the ascent has not settled within the round
/// cap.
fn saturate_window(
    basis_monomials: &[Monomial],
    nvars: usize,
    degree_bound: usize,
    pres: &IntMatrix,
) -> Option<Vec<(usize, Vec<BigInt>)>> {
    let dim = basis_monomials.len();
    let index: BTreeMap<&Monomial, usize> = basis_monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let initial: Vec<Vec<BigInt>> = (0..pres.cols())
        .map(|j| (0..dim).map(|i| pres.get(i, j).clone()).collect())
        .collect();
    let mut lattice = lattice_echelon(dim, initial);
    for _ in 0..SATURATION_ROUNDS {
        let mut fresh: Vec<Vec<BigInt>> = Vec::new();
        for (_, b) in &lattice {
            let top = (0..dim)
                .filter(|&i| !b[i].is_zero())
                .map(|i| basis_monomials[i].degree() as usize)
                .max()
                .unwrap_or(0);
            for m in monomials_below(nvars, degree_bound.saturating_sub(top)) {
                if m.degree() == 0 {
                    continue;
                }
                let mut shifted = vec![BigInt::zero(); dim];
                for i in 0..dim {
                    if !b[i].is_zero() {
                        shifted[index[&basis_monomials[i].mul(&m)]] = b[i].clone();
                    }
                }
                if !in_lattice(dim, &lattice, &shifted) {
                    fresh.push(shifted);
                }
            }
        }
        if fresh.is_empty() {
            return Some(lattice);
        }
        fresh.extend(lattice.into_iter().map(|(_, v)| v));
        lattice = lattice_echelon(dim, fresh);
    }
    None
}

/// Order of Z[x..]/(gens) when zero-dimensional.
///
/// Degree bounds start at 1 + sum of generator degrees and step by one.
/// `NotZeroDimensional` when the rational rank certificate still fails at
/// the final bound; `BoundExceeded` when the certificate holds but the
/// orders keep changing, as happens when the generators share a content
/// prime and the quotient is finite in no truncation-stable way.
pub fn quotient_order(gens: &[MultiPoly]) -> Result<BigUint> {
    let active: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if active.is_empty() {
        return Err(Error::NotZeroDimensional);
    }
    let nvars = active[0].nvars();
    let d0 = 1 + active
        .iter()
        .map(|g| g.total_degree().unwrap_or(0) as usize)
        .sum::<usize>();
    let cap = d0 + DEGREE_SLACK;
    let mut prev: Option<BigUint> = None;
    let mut last_cert = false;
    for d in d0..=cap {
        let pres = macaulay_presentation(&active, d);
        let Some(lattice) = saturate_window(&pres.basis, nvars, d, &pres.matrix) else {
            prev = None;
            continue;
        };
        let mut matrix = IntMatrix::zero(pres.basis.len(), lattice.len());
        for (j, (_, v)) in lattice.iter().enumerate() {
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    matrix.set(i, j, c.clone());
                }
            }
        }
        let cert = rank_over_q(&matrix) == pres.basis.len();
        last_cert = cert;
        match (cert, cokernel_order(&matrix)) {
            (true, CokernelOrder::Finite(n)) => {
                if prev.as_ref() == Some(&n) {
                    return Ok(n);
                }
                prev = Some(n);
            }
            _ => {
                prev = None;
            }
        }
    }
    if last_cert {
        Err(Error::BoundExceeded { cap })
    } else {
        Err(Error::NotZeroDimensional)
    }
}
