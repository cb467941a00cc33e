//! Zero cycles on Spec Z: finitely many primes with exact rational
//! multiplicities, and the log degree Σ l_p · log p.

use crate::exact::PrimeFactorization;
use crate::num::pairwise_sum;
use num_integer::Integer;
use serde::ser::{Serialize, SerializeMap, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

/// Small exact rational; multiplicities stay at desk scale so i64 suffices.
/// Always reduced, denominator positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rat {
    num: i64,
    den: i64,
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Rat { num, den }
    }

    pub fn from_int(n: i64) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn zero() -> Rat {
        Rat { num: 0, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, other: Rat) -> Rat {
        Rat::new(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, other: Rat) -> Rat {
        Rat::new(self.num * other.num, self.den * other.den)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Formal sum Σ l_p [p] over primes of Spec Z, zero multiplicities pruned.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZeroCycleOnS {
    multiplicities: BTreeMap<u64, Rat>,
}

impl ZeroCycleOnS {
    pub fn zero() -> Self {
        ZeroCycleOnS::default()
    }

    pub fn from_factorization(f: &PrimeFactorization) -> Self {
        let mut z = ZeroCycleOnS::zero();
        for (&p, &e) in f {
            z.add_at(p, Rat::from_int(i64::from(e)));
        }
        z
    }

    pub fn add_at(&mut self, p: u64, m: Rat) {
        let cur = self.multiplicity(p) + m;
        if cur.is_zero() {
            self.multiplicities.remove(&p);
        } else {
            self.multiplicities.insert(p, cur);
        }
    }

    /// self + k·other, exact.
    pub fn add_scaled(&self, other: &Self, k: Rat) -> Self {
        let mut out = self.clone();
        for (&p, &m) in &other.multiplicities {
            out.add_at(p, k * m);
        }
        out
    }

    pub fn multiplicity(&self, p: u64) -> Rat {
        self.multiplicities
            .get(&p)
            .copied()
            .unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Rat)> + '_ {
        self.multiplicities.iter().map(|(&p, &m)| (p, m))
    }

    pub fn is_zero(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.multiplicities.values().all(Rat::is_integer)
    }

    pub fn degree_log(&self) -> f64 {
        let parts: Vec<f64> = self
            .multiplicities
            .iter()
            .map(|(&p, m)| m.to_f64() * (p as f64).ln())
            .collect();
        pairwise_sum(&parts)
    }
}

/// Σ l_p · log p.
pub fn degree_log(z: &ZeroCycleOnS) -> f64 {
    z.degree_log()
}

impl Serialize for ZeroCycleOnS {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.multiplicities.len()))?;
        for (p, m) in &self.multiplicities {
            map.serialize_entry(&p.to_string(), &m.to_string())?;
        }
        map.end()
    }
}
