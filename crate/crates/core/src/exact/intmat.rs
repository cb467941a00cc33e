//! Dense arbitrary-precision integer matrices, Smith normal form, and
//! fraction-free (Bareiss) determinant and rank.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>, // row major
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row\_dst −= q · row\_src
    fn row_sub_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.data[dst * self.cols + j] -= v;
        }
    }

    /// col\_dst −= q · col\_src
    fn col_sub_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            self.data[i * self.cols + dst] -= v;
        }
    }

    /// row\_dst += row\_src
    fn row_add(&mut self, dst: usize, src: usize) {
        for j in 0..self.cols {
            let v = self.get(src, j).clone();
            self.data[dst * self.cols + j] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// Unimodular U, V with U·M·V diagonal; `diag` carries the nonnegative
/// elementary divisors in a divisibility chain d₁ | d₂ | …
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

fn min_abs_nonzero(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if v.abs() < a.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Smith normal form by minimal-pivot reduction.
///
/// The pivot is always a minimal-absolute-value nonzero entry of the
/// trailing submatrix, which keeps coefficient growth tame at desk scale.
/// Each round either clears the pivot row and column or strictly shrinks
/// the minimal absolute value, so the loop terminates; the divisibility
/// scan folds offending entries into the pivot row and re-reduces, which
/// yields the d₁ | d₂ | … chain directly.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let mut a = m.clone();
    let (r, c) = (a.rows(), a.cols());
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let n = r.min(c);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = min_abs_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut leftover = false;
        for i in t + 1..r {
            if a.get(i, t).is_zero() {
                continue;
            }
            let q = a.get(i, t) / a.get(t, t);
            if !q.is_zero() {
                a.row_sub_mul(i, t, &q);
                u.row_sub_mul(i, t, &q);
            }
            if !a.get(i, t).is_zero() {
                leftover = true;
            }
        }
        for j in t + 1..c {
            if a.get(t, j).is_zero() {
                continue;
            }
            let q = a.get(t, j) / a.get(t, t);
            if !q.is_zero() {
                a.col_sub_mul(j, t, &q);
                v.col_sub_mul(j, t, &q);
            }
            if !a.get(t, j).is_zero() {
                leftover = true;
            }
        }
        if leftover {
            continue; // smaller remainders exist; re-pick the pivot
        }

        let p = a.get(t, t).clone();
        let mut bad_row = None;
        'scan: for i in t + 1..r {
            for j in t + 1..c {
                if !(a.get(i, j) % &p).is_zero() {
                    bad_row = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad_row {
            a.row_add(t, i);
            u.row_add(t, i);
            continue;
        }

        if a.get(t, t).sign() == Sign::Minus {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..n).map(|i| a.get(i, i).clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    SnfResult { u, v, diag, rank }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CokernelOrder {
    Finite(BigUint),
    Infinite,
}

/// Order of coker(Zᶜ → Zʳ) presented by the columns of `m`: finite exactly
/// when the column span has full rank r, in which case it is the product of
/// the elementary divisors.
pub fn cokernel_order(m: &IntMatrix) -> CokernelOrder {
    let s = snf(m);
    if s.rank == m.rows() {
        let mut acc = BigUint::one();
        for d in &s.diag[..s.rank] {
            acc *= d.magnitude();
        }
        CokernelOrder::Finite(acc)
    } else {
        CokernelOrder::Infinite
    }
}

/// Exact determinant by fraction-free Gaussian elimination. All divisions
/// in the Bareiss update are exact over the integers.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, i);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1).clone()
}

/// Rank over the rationals by fraction-free elimination with row and column
/// pivot search.
pub fn rank_over_q(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pi) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, pi);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = a.get(i, j) * a.get(r, c) - a.get(i, c) * a.get(r, j);
                a.set(i, j, num / &prev);
            }
            a.set(i, c, BigInt::zero());
        }
        prev = a.get(r, c).clone();
        r += 1;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_matrix(entries: &[i64]) -> IntMatrix {
        IntMatrix::from_fn(entries.len(), entries.len(), |i, j| {
            if i == j {
                BigInt::from(entries[i])
            } else {
                BigInt::zero()
            }
        })
    }

    fn assert_snf_consistent(m: &IntMatrix) {
        let s = snf(m);
        // U M V reproduces the diagonal exactly
        let d = s.u.mul(m).mul(&s.v);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expect = if i == j && i < s.diag.len() {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d.get(i, j), &expect, "at ({i},{j})");
            }
        }
        // transforms are unimodular
        assert_eq!(bareiss_det(&s.u).abs(), BigInt::one());
        assert_eq!(bareiss_det(&s.v).abs(), BigInt::one());
        // divisibility chain
        for w in s.diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", s.diag);
            } else {
                assert!(w[1].is_zero());
            }
        }
        // both rank notions agree
        assert_eq!(s.rank, rank_over_q(m));
    }

    #[test]
    fn identity_and_zero() {
        let s = snf(&IntMatrix::identity(2));
        assert_eq!(s.diag, vec![BigInt::one(), BigInt::one()]);
        let s = snf(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!(s.diag, vec![BigInt::zero()]);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn diag_2_3_normalizes_to_1_6() {
        let m = diag_matrix(&[2, 3]);
        let s = snf(&m);
        assert_eq!(s.diag, vec![BigInt::one(), BigInt::from(6)]);
        assert_snf_consistent(&m);
        // d1 = gcd of all entries, d1 d2 = |det|
        assert_eq!(bareiss_det(&m), BigInt::from(6));
    }

    #[test]
    fn cokernel_orders() {
        assert_eq!(
            cokernel_order(&IntMatrix::from_rows(&[vec![2]])),
            CokernelOrder::Finite(BigUint::from(2u32))
        );
        assert_eq!(
            cokernel_order(&diag_matrix(&[2, 3])),
            CokernelOrder::Finite(BigUint::from(6u32))
        );
        assert_eq!(
            cokernel_order(&IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]])),
            CokernelOrder::Infinite
        );
        // wide matrix with full row rank
        assert_eq!(
            cokernel_order(&IntMatrix::from_rows(&[vec![2, 3]])),
            CokernelOrder::Finite(BigUint::one())
        );
    }

    #[test]
    fn snf_handles_awkward_shapes() {
        assert_snf_consistent(&IntMatrix::from_rows(&[vec![4, 6], vec![6, 9]]));
        assert_snf_consistent(&IntMatrix::from_rows(&[vec![2, 4, 4]]));
        assert_snf_consistent(&IntMatrix::from_rows(&[vec![0, 5], vec![7, 0], vec![3, 3]]));
        assert_snf_consistent(&IntMatrix::zero(3, 2));
    }

    #[test]
    fn bareiss_matches_cofactor_on_3x3() {
        let m = IntMatrix::from_rows(&[vec![2, -3, 1], vec![4, 0, -2], vec![1, 5, 3]]);
        // cofactor expansion by hand: 2(0·3−(−2)·5) − (−3)(4·3−(−2)·1) + 1(4·5−0·1)
        let expect = BigInt::from(2 * 10 + 3 * 14 + 20);
        assert_eq!(bareiss_det(&m), expect);
    }

    #[test]
    fn rank_of_rank_deficient() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank_over_q(&m), 2);
    }
}
