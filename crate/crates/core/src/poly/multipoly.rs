//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients, graded-lexicographic term order, and a round-tripping
//! string form (`3*x^2*y - 2`).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; length always matches the owning polynomial's vars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lex on exponents.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; p.vars.len()]), c);
        }
        p
    }

    pub fn var(vars: &[&str], idx: usize) -> Self {
        let mut p = MultiPoly::zero(vars);
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.terms.insert(Monomial(e), BigInt::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: &[(Vec<u32>, i64)]) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len());
            p.add_term(Monomial(e.clone()), BigInt::from(*c));
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "incompatible variable sets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Multiply by a bare monomial (used to build Macaulay columns).
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut out = MultiPoly::constant(&vars, 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                term *= x.pow(e);
            }
            acc += term;
        }
        acc
    }

    /// Total degree; zero polynomial reports None.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// True when every term has the same total degree d (or the poly is 0).
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// gcd of coefficient magnitudes; zero for the zero polynomial.
    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for c in self.terms.values() {
            g = g.gcd(c.magnitude());
        }
        g
    }

    /// Coefficients with respect to powers of one variable, index k holding
    /// the coefficient of var^k as a polynomial in the same variable set
    /// (with that variable's exponent zeroed).
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0);
        let mut out = vec![
            MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
            (deg + 1) as usize
        ];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Substitute 1 for the chosen variable and drop it from the set.
    pub fn set_var_to_one(&self, var: usize) -> MultiPoly {
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e: Vec<u32> =
                m.0.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != var)
                    .map(|(_, &x)| x)
                    .collect();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Same terms under fresh variable names (chart relabelling).
    pub fn rename_vars(&self, vars: &[&str]) -> MultiPoly {
        assert_eq!(vars.len(), self.vars.len());
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    /// Dense coefficient vector of a univariate polynomial, constant first.
    pub fn dense_univariate(&self) -> Vec<BigInt> {
        assert_eq!(self.nvars(), 1, "dense form needs exactly one variable");
        let deg = self.degree_in(0).unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = c.clone();
        }
        out
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<MultiPoly, String> {
        Parser::new(text, vars)?.parse_all()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // descending graded lex reads the way humans write polynomials
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                pieces.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => pieces.push(self.vars[i].clone()),
                    _ => pieces.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

/// All monomials of total degree < d in ascending graded lex order.
pub fn monomials_below(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == current.len() {
            if left == 0 {
                out.push(current.clone());
            }
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            rec(out, current, pos + 1, left - e);
            current[pos] = 0;
        }
    }
    let mut raw = Vec::new();
    for deg in 0..d as u32 {
        rec(&mut raw, &mut current, 0, deg);
    }
    raw.sort();
    raw.sort_by_key(|e| e.iter().sum::<u32>());
    for e in raw {
        out.push(Monomial(e));
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: Vec<&'a str>,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Int(s.parse().map_err(|e| format!("{e}"))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            c => return Err(format!("unexpected character {c:?}")),
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &[&'a str]) -> Result<Self, String> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            vars: vars.to_vec(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_all(&mut self) -> Result<MultiPoly, String> {
        let p = self.parse_expr()?;
        if self.pos != self.tokens.len() {
            return Err(format!("trailing input at token {}", self.pos));
        }
        Ok(p)
    }

    fn parse_expr(&mut self) -> Result<MultiPoly, String> {
        let mut acc = if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            self.parse_term()?.neg()
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<MultiPoly, String> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            let f = self.parse_factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<MultiPoly, String> {
        let base = self.parse_base()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            match self.bump() {
                Some(Token::Int(e)) => {
                    let e: u32 = e.to_string().parse().map_err(|e| format!("{e}"))?;
                    Ok(base.pow(e))
                }
                t => Err(format!("expected integer exponent, got {t:?}")),
            }
        } else {
            Ok(base)
        }
    }

    fn parse_base(&mut self) -> Result<MultiPoly, String> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(MultiPoly::constant(&self.vars, n)),
            Some(Token::Ident(name)) => {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| format!("unknown variable {name}"))?;
                Ok(MultiPoly::var(&self.vars, idx))
            }
            Some(Token::Minus) => Ok(self.parse_factor()?.neg()),
            Some(Token::LParen) => {
                let p = self.parse_expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(p),
                    t => Err(format!("expected ')', got {t:?}")),
                }
            }
            t => Err(format!("unexpected token {t:?}")),
        }
    }
}
