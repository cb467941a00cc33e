//! Symbolic expressions in one complex chart variable: parsing, Wirtinger
//! derivatives, substitution, and evaluation at any scalar precision.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' ('-')? integer)?
//! atom   := number | variable | name '(' expr ')' | '-' atom | '(' expr ')'
//! name   := 're' | 'im' | 'abs2' | 'conj' | 'exp' | 'log'
//! ```
//!
//! `log` is the natural logarithm; metric weights keep its argument on the
//! positive real axis. `re`, `im`, `abs2` and `/` desugar at parse time:
//! re f = (f + conj f)/2, im f = (f − conj f)/(2i), abs2 f = f·conj f,
//! f/g = f·g^(−1). The node set stays small so the derivative rules below
//! cover everything.

use crate::error::{Error, Result};
use crate::num::{Cx, Real};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, PartialEq)]
enum Node {
    Const(f64, f64),
    Var,
    Add(CExpr, CExpr),
    Mul(CExpr, CExpr),
    Neg(CExpr),
    Conj(CExpr),
    Exp(CExpr),
    Ln(CExpr),
    IntPow(CExpr, i32),
}

/// Shared immutable expression tree; clones are reference counted, so
/// derivative trees reuse subexpressions freely across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct CExpr(Arc<Node>);

fn node(n: Node) -> CExpr {
    CExpr(Arc::new(n))
}

impl CExpr {
    pub fn constant(re: f64, im: f64) -> CExpr {
        node(Node::Const(re, im))
    }

    pub fn real(re: f64) -> CExpr {
        CExpr::constant(re, 0.0)
    }

    pub fn var() -> CExpr {
        node(Node::Var)
    }

    fn as_const(&self) -> Option<(f64, f64)> {
        match *self.0 {
            Node::Const(a, b) => Some((a, b)),
            _ => None,
        }
    }

    fn is_const(&self, re: f64, im: f64) -> bool {
        self.as_const() == Some((re, im))
    }

    pub fn add(&self, other: &CExpr) -> CExpr {
        if let (Some((a, b)), Some((c, d))) = (self.as_const(), other.as_const()) {
            return CExpr::constant(a + c, b + d);
        }
        if self.is_const(0.0, 0.0) {
            return other.clone();
        }
        if other.is_const(0.0, 0.0) {
            return self.clone();
        }
        node(Node::Add(self.clone(), other.clone()))
    }

    pub fn sub(&self, other: &CExpr) -> CExpr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CExpr) -> CExpr {
        if let (Some((a, b)), Some((c, d))) = (self.as_const(), other.as_const()) {
            return CExpr::constant(a * c - b * d, a * d + b * c);
        }
        if self.is_const(0.0, 0.0) || other.is_const(0.0, 0.0) {
            return CExpr::constant(0.0, 0.0);
        }
        if self.is_const(1.0, 0.0) {
            return other.clone();
        }
        if other.is_const(1.0, 0.0) {
            return self.clone();
        }
        node(Node::Mul(self.clone(), other.clone()))
    }

    pub fn div(&self, other: &CExpr) -> CExpr {
        self.mul(&other.intpow(-1))
    }

    pub fn neg(&self) -> CExpr {
        if let Some((a, b)) = self.as_const() {
            return CExpr::constant(-a, -b);
        }
        if let Node::Neg(inner) = &*self.0 {
            return inner.clone();
        }
        node(Node::Neg(self.clone()))
    }

    pub fn conj(&self) -> CExpr {
        if let Some((a, b)) = self.as_const() {
            return CExpr::constant(a, -b);
        }
        if let Node::Conj(inner) = &*self.0 {
            return inner.clone();
        }
        node(Node::Conj(self.clone()))
    }

    pub fn exp(&self) -> CExpr {
        node(Node::Exp(self.clone()))
    }

    pub fn ln(&self) -> CExpr {
        node(Node::Ln(self.clone()))
    }

    pub fn intpow(&self, k: i32) -> CExpr {
        match k {
            0 => CExpr::constant(1.0, 0.0),
            1 => self.clone(),
            _ => node(Node::IntPow(self.clone(), k)),
        }
    }

    pub fn abs2(&self) -> CExpr {
        self.mul(&self.conj())
    }

    /// Wirtinger derivative ∂/∂z.
    pub fn d_z(&self) -> CExpr {
        match &*self.0 {
            Node::Const(..) => CExpr::constant(0.0, 0.0),
            Node::Var => CExpr::constant(1.0, 0.0),
            Node::Add(a, b) => a.d_z().add(&b.d_z()),
            Node::Mul(a, b) => a.d_z().mul(b).add(&a.mul(&b.d_z())),
            Node::Neg(a) => a.d_z().neg(),
            // ∂_z conj f = conj(∂_z̄ f)
            Node::Conj(a) => a.d_zbar().conj(),
            Node::Exp(a) => a.d_z().mul(self),
            Node::Ln(a) => a.d_z().div(a),
            Node::IntPow(a, k) => CExpr::real(f64::from(*k))
                .mul(&a.intpow(k - 1))
                .mul(&a.d_z()),
        }
    }

    /// Wirtinger derivative ∂/∂z̄.
    pub fn d_zbar(&self) -> CExpr {
        match &*self.0 {
            Node::Const(..) => CExpr::constant(0.0, 0.0),
            Node::Var => CExpr::constant(0.0, 0.0),
            Node::Add(a, b) => a.d_zbar().add(&b.d_zbar()),
            Node::Mul(a, b) => a.d_zbar().mul(b).add(&a.mul(&b.d_zbar())),
            Node::Neg(a) => a.d_zbar().neg(),
            Node::Conj(a) => a.d_z().conj(),
            Node::Exp(a) => a.d_zbar().mul(self),
            Node::Ln(a) => a.d_zbar().div(a),
            Node::IntPow(a, k) => CExpr::real(f64::from(*k))
                .mul(&a.intpow(k - 1))
                .mul(&a.d_zbar()),
        }
    }

    /// Replace the variable by another expression.
    pub fn subst(&self, replacement: &CExpr) -> CExpr {
        match &*self.0 {
            Node::Const(a, b) => CExpr::constant(*a, *b),
            Node::Var => replacement.clone(),
            Node::Add(a, b) => a.subst(replacement).add(&b.subst(replacement)),
            Node::Mul(a, b) => a.subst(replacement).mul(&b.subst(replacement)),
            Node::Neg(a) => a.subst(replacement).neg(),
            Node::Conj(a) => a.subst(replacement).conj(),
            Node::Exp(a) => a.subst(replacement).exp(),
            Node::Ln(a) => a.subst(replacement).ln(),
            Node::IntPow(a, k) => a.subst(replacement).intpow(*k),
        }
    }

    pub fn eval<T: Real>(&self, z: Cx<T>) -> Cx<T> {
        match &*self.0 {
            Node::Const(a, b) => Cx::new(T::of(*a), T::of(*b)),
            Node::Var => z,
            Node::Add(a, b) => a.eval(z) + b.eval(z),
            Node::Mul(a, b) => a.eval(z) * b.eval(z),
            Node::Neg(a) => -a.eval(z),
            Node::Conj(a) => a.eval(z).conj(),
            Node::Exp(a) => a.eval(z).exp(),
            Node::Ln(a) => a.eval(z).ln(),
            Node::IntPow(a, k) => a.eval(z).powi(*k),
        }
    }

    /// Parse with the given chart variable name.
    pub fn parse(text: &str, var: &str) -> Result<CExpr> {
        let tokens = lex(text)?;
        let mut p = ExprParser {
            tokens,
            pos: 0,
            var: var.to_string(),
        };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Expr(format!(
                "trailing input after position {}",
                p.pos
            )));
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "{x}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let x: f64 = s
                    .parse()
                    .map_err(|_| Error::Expr(format!("bad number {s:?}")))?;
                out.push(Tok::Num(x));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            c => return Err(Error::Expr(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct ExprParser {
    tokens: Vec<Tok>,
    pos: usize,
    var: String,
}

impl ExprParser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(Error::Expr(format!("expected {want}, found {t}"))),
            None => Err(Error::Expr(format!("expected {want}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<CExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CExpr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CExpr> {
        // unary minus binds weaker than `^`, so -x^2 is -(x^2)
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let negate = if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            match self.bump() {
                Some(Tok::Num(x)) if x.fract() == 0.0 && x.abs() <= f64::from(i32::MAX) => {
                    let mut k = x as i32;
                    if negate {
                        k = -k;
                    }
                    Ok(base.intpow(k))
                }
                t => Err(Error::Expr(format!(
                    "exponent must be an integer, found {}",
                    t.map_or_else(|| "end of input".to_string(), |t| t.to_string())
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<CExpr> {
        match self.bump() {
            Some(Tok::Num(x)) => Ok(CExpr::real(x)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == self.var => Ok(CExpr::var()),
            Some(Tok::Ident(name)) => {
                self.expect(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                match name.as_str() {
                    "re" => Ok(arg.add(&arg.conj()).mul(&CExpr::real(0.5))),
                    "im" => Ok(arg.sub(&arg.conj()).mul(&CExpr::constant(0.0, -0.5))),
                    "abs2" => Ok(arg.abs2()),
                    "conj" => Ok(arg.conj()),
                    "exp" => Ok(arg.exp()),
                    "log" => Ok(arg.ln()),
                    _ => Err(Error::Expr(format!("unknown function {name:?}"))),
                }
            }
            Some(t) => Err(Error::Expr(format!("unexpected token {t}"))),
            None => Err(Error::Expr("unexpected end of input".to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Cx<f64>;

    fn ev(text: &str, z: C) -> C {
        CExpr::parse(text, "z").unwrap().eval(z)
    }

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn parses_and_evaluates() {
        let z = C::new(1.0, 1.0);
        assert!(close(ev("abs2(z) + 1", z), C::new(3.0, 0.0), 1e-15));
        assert!(close(
            ev("re(z)", C::new(2.0, 3.0)),
            C::new(2.0, 0.0),
            1e-15
        ));
        assert!(close(
            ev("im(z)", C::new(2.0, 3.0)),
            C::new(3.0, 0.0),
            1e-15
        ));
        assert!(close(
            ev("1/(1 + abs2(z))", C::new(1.0, 0.0)),
            C::new(0.5, 0.0),
            1e-15
        ));
        assert!(close(
            ev("(1 + abs2(z))^-2", C::new(1.0, 0.0)),
            C::new(0.25, 0.0),
            1e-15
        ));
        assert!(close(
            ev("exp(log(2) * 3)", C::new(0.0, 0.0)),
            C::new(8.0, 0.0),
            1e-12
        ));
        assert!(close(ev("-z^2", C::new(0.0, 1.0)), C::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(CExpr::parse("q + 1", "z").is_err());
        assert!(CExpr::parse("sin(z)", "z").is_err());
        assert!(CExpr::parse("z^(1/2)", "z").is_err());
        assert!(CExpr::parse("z z", "z").is_err());
        assert!(CExpr::parse("(z", "z").is_err());
        assert!(CExpr::parse("", "z").is_err());
    }

    #[test]
    fn chart_variable_name_is_configurable() {
        let e = CExpr::parse("1/(1 + abs2(w))", "w").unwrap();
        assert!(close(e.eval(C::new(1.0, 0.0)), C::new(0.5, 0.0), 1e-15));
        assert!(CExpr::parse("1/(1 + abs2(z))", "w").is_err());
    }

    /// Central-difference check of both Wirtinger derivatives:
    /// df ≈ f_z dz + f_z̄ dz̄ for small complex steps in two directions.
    fn check_derivatives(text: &str, z: C) {
        let f = CExpr::parse(text, "z").unwrap();
        let dz = f.d_z();
        let dzb = f.d_zbar();
        let h = 1e-5;
        for step in [C::new(h, 0.0), C::new(0.0, h)] {
            let df = (f.eval(z + step) - f.eval(z - step)) / C::new(2.0, 0.0);
            let predicted = dz.eval(z) * step + dzb.eval(z) * step.conj();
            assert!(
                close(df, predicted, 1e-9),
                "{text} at {z}: df={df} predicted={predicted}"
            );
        }
    }

    #[test]
    fn wirtinger_derivatives_match_finite_differences() {
        let pts = [C::new(0.3, -0.2), C::new(-0.7, 0.4), C::new(1.1, 0.9)];
        for z in pts {
            check_derivatives("abs2(z)", z);
            check_derivatives("z^3 - 2*z", z);
            check_derivatives("conj(z)^2", z);
            check_derivatives("log(1 + abs2(z))", z);
            check_derivatives("exp(-abs2(z))", z);
            check_derivatives("re(z) * im(z)", z);
            check_derivatives("1/(2 + abs2(z))", z);
        }
    }

    #[test]
    fn fubini_study_laplacian_closed_form() {
        // ∂z∂z̄ log(1+|z|²) = (1+|z|²)^(−2), symbolic derivative exact
        let logw = CExpr::parse("log(1 + abs2(z))", "z").unwrap();
        let lap = logw.d_zbar().d_z();
        for z in [C::new(0.0, 0.0), C::new(0.5, -0.3), C::new(-1.2, 0.8)] {
            let expect = (1.0 + z.norm_sqr()).powi(-2);
            assert!(close(lap.eval(z), C::new(expect, 0.0), 1e-13), "at {z}");
        }
    }

    #[test]
    fn gaussian_weight_curvature() {
        // ∂z∂z̄ (−|z|²) = −1: curvature density of e^(−|z|²) is 1/π
        let logw = CExpr::parse("-abs2(z)", "z").unwrap();
        let lap = logw.d_zbar().d_z();
        assert!(close(lap.eval(C::new(0.7, 0.2)), C::new(-1.0, 0.0), 1e-14));
    }

    #[test]
    fn substitution_composes() {
        // φ(1/w) for φ = (1+|z|²)^(−1)
        let phi = CExpr::parse("(1 + abs2(z))^-1", "z").unwrap();
        let inv = CExpr::var().intpow(-1);
        let pulled = phi.subst(&inv);
        let w = C::new(2.0, 0.0);
        let expect = 1.0 / (1.0 + 0.25);
        assert!(close(pulled.eval(w), C::new(expect, 0.0), 1e-15));
    }
}
