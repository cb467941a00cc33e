//! Koszul complex of a sequence in Z[x..]: exterior powers with the
//! contraction differential, and the pushforward of its localized class to
//! a zero cycle on Spec Z.
//!
//! When the zeroth homology Z[x..]/(sequence) is finite, the sequence cuts
//! out codimension equal to its length inside a Cohen-Macaulay ring, so it
//! is a regular sequence, higher homology vanishes, and the class is
//! Σ_p v_p(#H₀) · [p].

use crate::error::Result;
use crate::exact::factorize;
use crate::poly::{quotient_order, MultiPoly};
use crate::scheme::cycle::ZeroCycleOnS;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>, // row major
}

impl PolyMatrix {
    pub fn zero(vars: &[&str], rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(vars); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let vars: Vec<&str> = self.entries[0].vars().iter().map(String::as_str).collect();
        let mut out = PolyMatrix::zero(&vars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(&vars);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }
}

/// Subsets of {0..n-1} of size k, each ascending, in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub sequence: Vec<MultiPoly>,
    /// differentials[k-1] maps Λ^k to Λ^(k-1); shape C(n,k-1) × C(n,k).
    pub differentials: Vec<PolyMatrix>,
}

impl KoszulComplex {
    /// d ∘ d = 0, verified as an exact polynomial identity.
    pub fn composition_is_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }
}

/// Koszul complex on basis vectors e_S, S ⊂ {0..n-1}, with
/// d(e_S) = Σ_{i ∈ S} (−1)^{pos(i,S)} x_i e_{S∖i}.
pub fn koszul(xs: &[MultiPoly]) -> KoszulComplex {
    assert!(!xs.is_empty(), "empty sequence");
    let vars: Vec<&str> = xs[0].vars().iter().map(String::as_str).collect();
    for x in xs {
        assert_eq!(
            x.vars(),
            xs[0].vars(),
            "sequence must share one variable set"
        );
    }
    let n = xs.len();
    let mut differentials = Vec::with_capacity(n);
    for k in 1..=n {
        let rows_s = k_subsets(n, k - 1);
        let cols_s = k_subsets(n, k);
        let index: BTreeMap<&[usize], usize> = rows_s
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let mut mat = PolyMatrix::zero(&vars, rows_s.len(), cols_s.len());
        for (j, s) in cols_s.iter().enumerate() {
            for (pos, &i) in s.iter().enumerate() {
                let mut t = s.clone();
                t.remove(pos);
                let r = index[t.as_slice()];
                let entry = if pos % 2 == 0 {
                    xs[i].clone()
                } else {
                    xs[i].neg()
                };
                mat.set(r, j, entry);
            }
        }
        differentials.push(mat);
    }
    KoszulComplex {
        sequence: xs.to_vec(),
        differentials,
    }
}

/// Pushforward to Spec Z of the class carried by the complex: v_p of the
/// order of H₀ at each prime. Inherits the zero-dimensionality and
/// factorization errors of the order computation.
pub fn localized_chern_pushforward(k: &KoszulComplex) -> Result<ZeroCycleOnS> {
    let order = quotient_order(&k.sequence)?;
    let f = factorize(&order)?;
    Ok(ZeroCycleOnS::from_factorization(&f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scheme::cycle::Rat;

    fn polys(texts: &[&str], vars: &[&str]) -> Vec<MultiPoly> {
        texts
            .iter()
            .map(|t| MultiPoly::parse(t, vars).unwrap())
            .collect()
    }

    #[test]
    fn two_term_complex_matches_hand_matrices() {
        let xs = polys(&["u", "2"], &["u"]);
        let k = koszul(&xs);
        assert_eq!(k.differentials.len(), 2);
        let d1 = &k.differentials[0];
        assert_eq!((d1.rows(), d1.cols()), (1, 2));
        assert_eq!(d1.get(0, 0), &xs[0]);
        assert_eq!(d1.get(0, 1), &xs[1]);
        let d2 = &k.differentials[1];
        assert_eq!((d2.rows(), d2.cols()), (2, 1));
        assert_eq!(d2.get(0, 0), &xs[1].neg());
        assert_eq!(d2.get(1, 0), &xs[0]);
        assert!(k.composition_is_zero());
    }

    #[test]
    fn shapes_are_binomial_and_compositions_vanish() {
        let xs = polys(&["x", "y - 1", "x + y"], &["x", "y"]);
        let k = koszul(&xs);
        let shapes: Vec<(usize, usize)> = k
            .differentials
            .iter()
            .map(|d| (d.rows(), d.cols()))
            .collect();
        assert_eq!(shapes, vec![(1, 3), (3, 3), (3, 1)]);
        assert!(k.composition_is_zero());
    }

    #[test]
    fn pushforward_of_an_integer() {
        let k = koszul(&[MultiPoly::constant(&[], 5)]);
        let z = localized_chern_pushforward(&k).unwrap();
        assert_eq!(z.multiplicity(5), Rat::from_int(1));
        assert!((z.degree_log() - 5f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn pushforward_of_plane_pairs() {
        let k = koszul(&polys(&["x^2 + 1", "5"], &["x"]));
        let z = localized_chern_pushforward(&k).unwrap();
        assert_eq!(z.multiplicity(5), Rat::from_int(2));
        let k = koszul(&polys(&["x^2 - 5", "x^3"], &["x"]));
        let z = localized_chern_pushforward(&k).unwrap();
        assert_eq!(z.multiplicity(5), Rat::from_int(3));
        assert!(z.is_integral());
    }

    #[test]
    fn positive_dimensional_sequence_is_refused() {
        let k = koszul(&polys(&["x"], &["x"]));
        assert!(matches!(
            localized_chern_pushforward(&k),
            Err(Error::NotZeroDimensional)
        ));
    }
}
