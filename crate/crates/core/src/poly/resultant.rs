//! Sylvester resultants: the general bivariate form with polynomial
//! entries (Laplace expansion, desk sizes), and the integer resultant of a
//! pair of binary forms taken at their formal degrees so zeros at infinity and
//! degenerate sections are handled uniformly.

use crate::error::{Error, Result};
use crate::exact::{bareiss_det, IntMatrix};
use crate::poly::multipoly::MultiPoly;
use num_bigint::BigInt;

/// Determinant of a square matrix of polynomials by first-column Laplace
/// expansion with zero skipping. Exponential in size; callers keep the
/// Sylvester matrices at desk scale (≤ 8).
fn poly_det(m: &[Vec<MultiPoly>], template: &MultiPoly) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        let vars: Vec<&str> = template.vars().iter().map(String::as_str).collect();
        return MultiPoly::constant(&vars, 1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let vars: Vec<&str> = template.vars().iter().map(String::as_str).collect();
    let mut acc = MultiPoly::zero(&vars);
    for i in 0..n {
        if m[i][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let cof = m[i][0].mul(&poly_det(&minor, template));
        acc = if i % 2 == 0 {
            acc.add(&cof)
        } else {
            acc.sub(&cof)
        };
    }
    acc
}

/// Sylvester resultant eliminating the named variable, degrees taken as the
/// actual degrees in that variable. Entries may involve the remaining
/// variables. A polynomial constant in the variable contributes through
/// Res(c, g) = c^{deg g}.
pub fn resultant_bivariate(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let idx = f
        .vars()
        .iter()
        .position(|v| v == var)
        .ok_or_else(|| Error::BothConstantInVar {
            var: var.to_string(),
        })?;
    let m = f.degree_in(idx).unwrap_or(0) as usize;
    let n = g.degree_in(idx).unwrap_or(0) as usize;
    if m == 0 && n == 0 {
        return Err(Error::BothConstantInVar {
            var: var.to_string(),
        });
    }
    if m == 0 {
        return Ok(f.pow(n as u32));
    }
    if n == 0 {
        return Ok(g.pow(m as u32));
    }
    let fc = f.coeffs_in(idx); // index k = coefficient of var^k
    let gc = g.coeffs_in(idx);
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let zero = MultiPoly::zero(&vars);
    let size = m + n;
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[r][r + m - k] = c.clone(); // leading coefficient on the diagonal
        }
    }
    for r in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + r][r + n - k] = c.clone();
        }
    }
    Ok(poly_det(&mat, f))
}

/// Integer Sylvester determinant for two coefficient vectors read at formal
/// degrees m = len−1, n = len−1. Vectors are constant-first; leading zeros
/// encode zeros at infinity and make the resultant vanish appropriately.
pub fn resultant_forms(f_coeffs: &[BigInt], g_coeffs: &[BigInt]) -> BigInt {
    let m = f_coeffs.len() - 1;
    let n = g_coeffs.len() - 1;
    let size = m + n;
    if size == 0 {
        // two constants: empty determinant, no common projective zero
        return BigInt::from(1);
    }
    let mut mat = IntMatrix::zero(size, size);
    for r in 0..n {
        for (k, c) in f_coeffs.iter().enumerate() {
            mat.set(r, r + m - k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in g_coeffs.iter().enumerate() {
            mat.set(n + r, r + n - k, c.clone());
        }
    }
    bareiss_det(&mat)
}
