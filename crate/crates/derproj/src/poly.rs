//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept sorted in descending grevlex order; that order is the
//! canonical form and is what printing uses, independent of any order a
//! Groebner run happens to be using.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::{Monomial, MonomialOrder};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Variable names plus the coefficient field. Shared by reference between
/// all values of a computation; equality is structural.
#[derive(Debug, PartialEq, Eq)]
pub struct RingCtx {
    pub field: Field,
    pub vars: Vec<String>,
}

impl RingCtx {
    pub fn new(field: Field, vars: Vec<String>) -> Arc<RingCtx> {
        Arc::new(RingCtx { field, vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    pub ctx: Arc<RingCtx>,
    /// Nonzero terms, sorted descending in grevlex.
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ctx: &Arc<RingCtx>) -> Polynomial {
        Polynomial { ctx: ctx.clone(), terms: vec![] }
    }

    pub fn one(ctx: &Arc<RingCtx>) -> Polynomial {
        Polynomial::constant(ctx, ctx.field.one())
    }

    pub fn constant(ctx: &Arc<RingCtx>, c: Scalar) -> Polynomial {
        if ctx.field.is_zero(&c) {
            return Polynomial::zero(ctx);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms: vec![(Monomial::one(ctx.nvars()), c)],
        }
    }

    pub fn var(ctx: &Arc<RingCtx>, i: usize) -> Polynomial {
        Polynomial {
            ctx: ctx.clone(),
            terms: vec![(Monomial::var(ctx.nvars(), i), ctx.field.one())],
        }
    }

    pub fn monomial(ctx: &Arc<RingCtx>, m: Monomial, c: Scalar) -> Polynomial {
        if ctx.field.is_zero(&c) {
            return Polynomial::zero(ctx);
        }
        Polynomial { ctx: ctx.clone(), terms: vec![(m, c)] }
    }

    /// Build from unsorted (possibly repeated) terms; normalizes.
    pub fn from_terms(ctx: &Arc<RingCtx>, raw: Vec<(Monomial, Scalar)>) -> Polynomial {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in raw {
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = ctx.field.add(e.get(), &c);
                    if ctx.field.is_zero(&s) {
                        e.remove();
                    } else {
                        e.insert(s);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !ctx.field.is_zero(&c) {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().collect();
        sort_terms(&mut terms);
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(
                "polynomials from different ring contexts".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let f = &self.ctx.field;
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let o = MonomialOrder::Grevlex;
        while i < self.terms.len() && j < other.terms.len() {
            match o.cmp_unchecked(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(&self.terms[i].1, &other.terms[j].1);
                    if !f.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { ctx: self.ctx.clone(), terms: out })
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.ctx.field;
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let f = &self.ctx.field;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = f.add(e.get(), &c);
                        if f.is_zero(&s) {
                            e.remove();
                        } else {
                            e.insert(s);
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        if !f.is_zero(&c) {
                            e.insert(c);
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> = acc.into_iter().collect();
        sort_terms(&mut terms);
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let f = &self.ctx.field;
        if f.is_zero(c) {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let f = &self.ctx.field;
        if f.is_zero(c) {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp_unchecked(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    /// Coefficient of an exact monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ctx.field.zero())
    }

    /// Substitute field values for all variables.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let f = &self.ctx.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(&t, &point[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ctx);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn parse(ctx: &Arc<RingCtx>, text: &str) -> Result<Polynomial> {
        parse_poly(ctx, text)
    }
}

fn sort_terms(terms: &mut [(Monomial, Scalar)]) {
    let o = MonomialOrder::Grevlex;
    terms.sort_by(|a, b| o.cmp_unchecked(&b.0, &a.0));
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = &self.ctx.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative(c);
            if k == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else if neg {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let c = f.abs(c);
            let coeff_is_one = c == f.one();
            let mut wrote_factor = false;
            if !coeff_is_one || m.is_one() {
                write!(out, "{}", f.format(&c))?;
                wrote_factor = true;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(out, "*")?;
                }
                write!(out, "{}", self.ctx.vars[i])?;
                if e > 1 {
                    write!(out, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Text grammar: terms joined by +/-, each term a '*'-joined product of an
// optional coefficient (integer or a/b) and variable powers `x^e`.
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, PartialEq, Clone)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Ident(String),
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_tok(&mut self) -> Result<Tok> {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.bump();
        }
        let Some(b) = self.peek() else { return Ok(Tok::End) };
        match b {
            b'+' => {
                self.bump();
                Ok(Tok::Plus)
            }
            b'-' => {
                self.bump();
                Ok(Tok::Minus)
            }
            b'*' => {
                self.bump();
                Ok(Tok::Star)
            }
            b'^' => {
                self.bump();
                Ok(Tok::Caret)
            }
            b'/' => {
                self.bump();
                Ok(Tok::Slash)
            }
            b'0'..=b'9' => {
                let mut s = String::new();
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    s.push(self.bump().unwrap() as char);
                }
                Ok(Tok::Int(s.parse::<BigInt>().unwrap()))
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut s = String::new();
                while matches!(self.peek(), Some(b'a'..=b'z' | b'A'..=b'Z' | b'_' | b'0'..=b'9')) {
                    s.push(self.bump().unwrap() as char);
                }
                Ok(Tok::Ident(s))
            }
            other => Err(self.err(&format!("unexpected character '{}'", other as char))),
        }
    }
}

fn parse_poly(ctx: &Arc<RingCtx>, text: &str) -> Result<Polynomial> {
    let mut lx = Lexer::new(text);
    let mut tok = lx.next_tok()?;
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();

    // Leading sign.
    let mut sign_negative = false;
    loop {
        match tok {
            Tok::Plus => {
                tok = lx.next_tok()?;
            }
            Tok::Minus => {
                sign_negative = !sign_negative;
                tok = lx.next_tok()?;
            }
            _ => break,
        }
    }

    loop {
        // One term: factors joined by '*'.
        let mut coeff = ctx.field.one();
        let mut mono = Monomial::one(ctx.nvars());
        let mut saw_factor = false;
        loop {
            match &tok {
                Tok::Int(n) => {
                    let num = n.clone();
                    tok = lx.next_tok()?;
                    let c = if tok == Tok::Slash {
                        tok = lx.next_tok()?;
                        let Tok::Int(den) = &tok else {
                            return Err(lx.err("expected denominator after '/'"));
                        };
                        let den = den.clone();
                        tok = lx.next_tok()?;
                        ctx.field.from_ratio(&num, &den)?
                    } else {
                        ctx.field.from_ratio(&num, &BigInt::from(1))?
                    };
                    coeff = ctx.field.mul(&coeff, &c);
                    saw_factor = true;
                }
                Tok::Ident(name) => {
                    let Some(i) = ctx.var_index(name) else {
                        return Err(lx.err(&format!("unknown variable '{name}'")));
                    };
                    tok = lx.next_tok()?;
                    let mut e: u32 = 1;
                    if tok == Tok::Caret {
                        tok = lx.next_tok()?;
                        let Tok::Int(n) = &tok else {
                            return Err(lx.err("expected integer exponent after '^'"));
                        };
                        use num_traits::ToPrimitive;
                        e = n.to_u32().ok_or_else(|| lx.err("exponent too large"))?;
                        tok = lx.next_tok()?;
                    }
                    let mut m2 = mono.0.clone();
                    m2[i] = m2[i]
                        .checked_add(e as u16)
                        .ok_or_else(|| lx.err("exponent overflow"))?;
                    mono = Monomial(m2);
                    saw_factor = true;
                }
                _ => return Err(lx.err("expected a coefficient or variable")),
            }
            if tok == Tok::Star {
                tok = lx.next_tok()?;
                continue;
            }
            break;
        }
        if !saw_factor {
            return Err(lx.err("empty term"));
        }
        if sign_negative {
            coeff = ctx.field.neg(&coeff);
        }
        terms.push((mono, coeff));

        match tok {
            Tok::End => break,
            Tok::Plus | Tok::Minus => {
                sign_negative = false;
                loop {
                    match tok {
                        Tok::Plus => tok = lx.next_tok()?,
                        Tok::Minus => {
                            sign_negative = !sign_negative;
                            tok = lx.next_tok()?;
                        }
                        _ => break,
                    }
                }
            }
            _ => return Err(lx.err("expected '+', '-' or end of input")),
        }
    }

    Ok(Polynomial::from_terms(ctx, terms))
}
