//! Multivariate polynomials over a prime field `F_p` and a Buchberger
//! Groebner engine.
//!
//! All rings in this crate are graded polynomial models of the complete local
//! rings one usually has in mind: every ideal we care about is homogeneous,
//! so Hilbert functions, quotient dimensions and regular sequences computed
//! here agree with their completed counterparts.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_CHARACTERISTIC: u64 = 101;
pub const DEFAULT_DEGREE_BOUND: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("{0} is not a prime (or is too large; characteristic must be below 2^31)")]
    NotPrime(u64),
    #[error("duplicate or empty variable name {0:?}")]
    BadVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("polynomial {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("degree bound {bound} too small to certify (needed {needed})")]
    InconclusiveAtBound { bound: u32, needed: u32 },
    #[error("polynomials belong to different rings")]
    RingMismatch,
}

/// `F_p[vars]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    p: u64,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], p: u64) -> Result<Arc<PolyRing>, PolyError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(PolyError::NotPrime(p));
        }
        let mut seen = BTreeSet::new();
        let mut names = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            let ok = !v.is_empty()
                && v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || !seen.insert(v.to_string()) {
                return Err(PolyError::BadVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Arc::new(PolyRing { vars: names, p }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest;
    /// eliminates the first block.
    Elimination(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(i: usize, n: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn grevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => grevlex_slice(&a.0, &b.0),
            MonomialOrder::Elimination(k) => {
                grevlex_slice(&a.0[..k], &b.0[..k]).then_with(|| grevlex_slice(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn reduce_coeff(c: i64, p: u64) -> u64 {
    c.rem_euclid(p as i64) as u64
}

/// Terms are kept in decreasing lexicographic exponent order with nonzero
/// coefficients in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: vec![] }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Polynomial {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Self::from_terms(ring, vec![(Monomial::var(i, ring.nvars()), 1)])
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial) -> Polynomial {
        Self::from_terms(ring, vec![(m, 1)])
    }

    /// `x^a - x^b`
    pub fn binomial(ring: &Arc<PolyRing>, a: Monomial, b: Monomial) -> Polynomial {
        Self::from_terms(ring, vec![(a, 1), (b, -1)])
    }

    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, i64)>) -> Polynomial {
        let p = ring.p;
        let mut ts: Vec<(Monomial, u64)> = terms.into_iter().map(|(m, c)| (m, reduce_coeff(c, p))).collect();
        ts.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(ts.len());
        for (m, c) in ts {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = (*lc + c) % p,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial, PolyError> {
        Parser { ring, src: text.as_bytes(), pos: 0 }.parse_all()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<&(Monomial, u64)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, self.ring.p - 1)
    }

    fn combine(&self, other: &Polynomial, k: u64) -> Polynomial {
        assert_eq!(self.ring, other.ring, "polynomials from different rings");
        let p = self.ring.p;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(m, c)| (m.clone(), mul_mod(*c, k, p))));
        let ring = self.ring.clone();
        Polynomial::from_terms(&ring, terms.into_iter().map(|(m, c)| (m, c as i64)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, other.ring, "polynomials from different rings");
        let p = self.ring.p;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), mul_mod(*c1, *c2, p) as i64));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn scale(&self, c: i64) -> Polynomial {
        let p = self.ring.p;
        let k = reduce_coeff(c, p);
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, x)| (m.clone(), mul_mod(*x, k, p) as i64)).collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Same polynomial in a ring with `extra` new variables in front.
    fn shift_into(&self, ring: &Arc<PolyRing>, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; extra];
                e.extend_from_slice(&m.0);
                (Monomial(e), *c as i64)
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Drops the first `extra` variables, which must not occur.
    fn unshift_into(&self, ring: &Arc<PolyRing>, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(m.0[..extra].iter().all(|&e| e == 0));
                (Monomial(m.0[extra..].to_vec()), *c as i64)
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Renders terms in the given order, coefficients as symmetric residues.
    pub fn display_in(&self, order: MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ts: Vec<&(Monomial, u64)> = self.terms.iter().collect();
        ts.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let p = self.ring.p;
        let mut out = String::new();
        for (i, (m, c)) in ts.into_iter().enumerate() {
            let signed = if *c > p / 2 { *c as i64 - p as i64 } else { *c as i64 };
            let (neg, mag) = (signed < 0, signed.unsigned_abs());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| if *e == 1 { self.ring.vars[v].clone() } else { format!("{}^{}", self.ring.vars[v], e) })
                .collect();
            match (mag, factors.is_empty()) {
                (_, true) => out.push_str(&mag.to_string()),
                (1, false) => out.push_str(&factors.join("*")),
                _ => out.push_str(&format!("{}*{}", mag, factors.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in(MonomialOrder::Grevlex))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(&mut self) -> Result<Polynomial, PolyError> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.scale(-1)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let Ok(e) = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("").parse::<u32>() else {
                return self.err("expected exponent");
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                // reduce digit by digit so long literals do not overflow
                let p = self.ring.p;
                let v = digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Polynomial::constant(self.ring, v as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(PolyError::UnknownVariable(name.to_string())),
                }
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

// ---------------------------------------------------------------------------
// Groebner engine. Internally polynomials are term vectors sorted decreasing
// in the working order.

type Terms = Vec<(Monomial, u64)>;

fn sorted_terms(f: &Polynomial, order: MonomialOrder) -> Terms {
    let mut t = f.terms.clone();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn from_sorted(ring: &Arc<PolyRing>, t: Terms) -> Polynomial {
    Polynomial::from_terms(ring, t.into_iter().map(|(m, c)| (m, c as i64)).collect())
}

/// `f - c * m * g`, all sorted in `order`.
fn sub_scaled(
    f: &[(Monomial, u64)],
    c: u64,
    m: &Monomial,
    g: &[(Monomial, u64)],
    order: MonomialOrder,
    p: u64,
) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let neg = |x: u64| (p - mul_mod(c, x, p)) % p;
    while i < f.len() || j < g.len() {
        if j == g.len() {
            out.push(f[i].clone());
            i += 1;
            continue;
        }
        let gm = m.mul(&g[j].0);
        if i == f.len() {
            out.push((gm, neg(g[j].1)));
            j += 1;
            continue;
        }
        match order.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, neg(g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c2 = (f[i].1 + neg(g[j].1)) % p;
                if c2 != 0 {
                    out.push((gm, c2));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` modulo monic `basis`.
fn reduce_full(mut f: Terms, basis: &[Terms], order: MonomialOrder, p: u64) -> Terms {
    let mut rem: Terms = Vec::new();
    while let Some((lm, lc)) = f.first().cloned() {
        match basis.iter().find(|g| g[0].0.divides(&lm)) {
            Some(g) => {
                let q = lm.div(&g[0].0);
                f = sub_scaled(&f, lc, &q, g, order, p);
            }
            None => {
                rem.push((lm, lc));
                f.remove(0);
            }
        }
    }
    rem
}

fn make_monic(mut f: Terms, p: u64) -> Terms {
    if let Some(&(_, lc)) = f.first() {
        if lc != 1 {
            let inv = inv_mod(lc, p);
            for t in &mut f {
                t.1 = mul_mod(t.1, inv, p);
            }
        }
    }
    f
}

fn s_polynomial(f: &Terms, g: &Terms, order: MonomialOrder, p: u64) -> Terms {
    let l = f[0].0.lcm(&g[0].0);
    let mf = l.div(&f[0].0);
    let mg = l.div(&g[0].0);
    let fm: Terms = f.iter().map(|(m, c)| (m.mul(&mf), *c)).collect();
    sub_scaled(&fm, 1, &mg, g, order, p)
}

/// Reduced Groebner basis of monic, order-sorted polynomials.
fn buchberger(gens: Vec<Terms>, order: MonomialOrder, p: u64) -> Vec<Terms> {
    let mut basis: Vec<Terms> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let add = |basis: &mut Vec<Terms>, pairs: &mut Vec<(usize, usize)>, h: Terms| {
        let k = basis.len();
        basis.push(h);
        for i in 0..k {
            pairs.push((i, k));
        }
    };

    for g in gens {
        let h = reduce_full(g, &basis, order, p);
        if !h.is_empty() {
            add(&mut basis, &mut pairs, make_monic(h, p));
        }
    }

    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let la = basis[pairs[a].0][0].0.lcm(&basis[pairs[a].1][0].0);
                let lb = basis[pairs[b].0][0].0.lcm(&basis[pairs[b].1][0].0);
                order.cmp(&la, &lb)
            })
            .expect("pairs is nonempty");
        let (i, j) = pairs.swap_remove(best);
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let pending = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
        let chain =
            (0..basis.len()).any(|k| k != i && k != j && basis[k][0].0.divides(&l) && !pending(i, k) && !pending(j, k));
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order, p);
        let h = reduce_full(s, &basis, order, p);
        if !h.is_empty() {
            add(&mut basis, &mut pairs, make_monic(h, p));
        }
    }

    // minimalize, then interreduce
    let mut minimal: Vec<Terms> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant =
            basis.iter().enumerate().any(|(j, h)| j != i && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Terms> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Terms> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let head = minimal[i][0].clone();
        let tail = reduce_full(minimal[i][1..].to_vec(), &others, order, p);
        let mut g = vec![head];
        g.extend(tail);
        reduced.push(g);
    }
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    reduced
}

/// A finitely generated ideal with a lazily computed reduced Groebner basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    gb: OnceLock<Vec<Polynomial>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.display_in(self.order)).collect();
        write!(f, "Ideal({:?}, {})", self.order, gens.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>, order: MonomialOrder) -> Result<Ideal, PolyError> {
        if generators.iter().any(|g| g.ring != *ring) {
            return Err(PolyError::RingMismatch);
        }
        if let MonomialOrder::Elimination(k) = order {
            assert!(k <= ring.nvars(), "elimination block larger than the variable count");
        }
        Ok(Ideal { ring: ring.clone(), generators, order, gb: OnceLock::new() })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, gens: &[S], order: MonomialOrder) -> Result<Ideal, PolyError> {
        let polys = gens.iter().map(|g| Polynomial::parse(ring, g.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, polys, order)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), order, gb: OnceLock::new() }
    }

    /// The reduced Groebner basis, monic, sorted by decreasing leading term.
    pub fn basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            let p = self.ring.p;
            let gens: Vec<Terms> = self
                .generators
                .iter()
                .filter(|g| !g.is_zero())
                .map(|g| make_monic(sorted_terms(g, self.order), p))
                .collect();
            buchberger(gens, self.order, p).into_iter().map(|t| from_sorted(&self.ring, t)).collect()
        })
    }

    fn basis_terms(&self) -> Vec<Terms> {
        self.basis().iter().map(|g| sorted_terms(g, self.order)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis_terms().into_iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }

    pub fn is_whole_ring(&self) -> bool {
        self.leading_monomials().iter().any(|m| m.degree() == 0)
    }
}

/// The ideal given by its reduced Groebner basis, with the cache populated.
pub fn groebner_basis(i: &Ideal) -> Ideal {
    let basis = i.basis().to_vec();
    let out = Ideal { ring: i.ring.clone(), generators: basis.clone(), order: i.order, gb: OnceLock::new() };
    let _ = out.gb.set(basis);
    out
}

pub fn normal_form(f: &Polynomial, i: &Ideal) -> Polynomial {
    assert_eq!(f.ring, i.ring, "polynomial and ideal live in different rings");
    let basis = i.basis_terms();
    from_sorted(&i.ring, reduce_full(sorted_terms(f, i.order), &basis, i.order, i.ring.p))
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> bool {
    if i.ring != j.ring {
        return false;
    }
    let j = if j.order == i.order { j.clone() } else { j.with_order(i.order) };
    i.basis() == j.basis()
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Ideal {
    let mut gens = i.generators.clone();
    gens.extend(j.generators.iter().cloned());
    Ideal { ring: i.ring.clone(), generators: gens, order: i.order, gb: OnceLock::new() }
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Ideal {
    let gens = i.generators.iter().flat_map(|f| j.generators.iter().map(move |g| f.mul(g))).collect();
    Ideal { ring: i.ring.clone(), generators: gens, order: i.order, gb: OnceLock::new() }
}

fn fresh_name(ring: &PolyRing) -> String {
    let mut name = "_t".to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

fn ring_with_front_var(ring: &Arc<PolyRing>) -> Arc<PolyRing> {
    let mut vars = vec![fresh_name(ring)];
    vars.extend(ring.vars.iter().cloned());
    PolyRing::new(&vars, ring.p).expect("fresh variable keeps names distinct")
}

/// Generators of `big ∩ F[original vars]` from an elimination basis.
fn eliminate_front(big: &Ideal, ring: &Arc<PolyRing>, order: MonomialOrder) -> Ideal {
    let gens: Vec<Polynomial> = big
        .basis()
        .iter()
        .filter(|g| g.terms.iter().all(|(m, _)| m.0[0] == 0))
        .map(|g| g.unshift_into(ring, 1))
        .collect();
    Ideal { ring: ring.clone(), generators: gens, order, gb: OnceLock::new() }
}

/// `I ∩ J` via `(t I + (1 - t) J) ∩ F[x]`.
pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Ideal {
    let big_ring = ring_with_front_var(&i.ring);
    let t = Polynomial::var(&big_ring, 0);
    let one_minus_t = Polynomial::constant(&big_ring, 1).sub(&t);
    let mut gens: Vec<Polynomial> = i.generators.iter().map(|f| t.mul(&f.shift_into(&big_ring, 1))).collect();
    gens.extend(j.generators.iter().map(|g| one_minus_t.mul(&g.shift_into(&big_ring, 1))));
    let big = Ideal { ring: big_ring, generators: gens, order: MonomialOrder::Elimination(1), gb: OnceLock::new() };
    eliminate_front(&big, &i.ring, i.order)
}

/// `(I : f^∞)` via `(I + (t f - 1)) ∩ F[x]`.
pub fn saturate(i: &Ideal, f: &Polynomial) -> Ideal {
    assert_eq!(f.ring, i.ring, "polynomial and ideal live in different rings");
    let big_ring = ring_with_front_var(&i.ring);
    let t = Polynomial::var(&big_ring, 0);
    let mut gens: Vec<Polynomial> = i.generators.iter().map(|g| g.shift_into(&big_ring, 1)).collect();
    gens.push(t.mul(&f.shift_into(&big_ring, 1)).sub(&Polynomial::constant(&big_ring, 1)));
    let big = Ideal { ring: big_ring, generators: gens, order: MonomialOrder::Elimination(1), gb: OnceLock::new() };
    groebner_basis(&eliminate_front(&big, &i.ring, i.order))
}

/// `(I : f) = (1/f) (I ∩ (f))`.
pub fn ideal_quotient(i: &Ideal, f: &Polynomial) -> Ideal {
    let fi = Ideal { ring: i.ring.clone(), generators: vec![f.clone()], order: i.order, gb: OnceLock::new() };
    let inter = ideal_intersection(i, &fi);
    let gens = inter.basis().iter().map(|g| exact_divide(g, f)).collect();
    Ideal { ring: i.ring.clone(), generators: gens, order: i.order, gb: OnceLock::new() }
}

/// `g / f` for `f | g`.
fn exact_divide(g: &Polynomial, f: &Polynomial) -> Polynomial {
    let order = MonomialOrder::Grevlex;
    let p = g.ring.p;
    let fs = make_monic(sorted_terms(f, order), p);
    let lc_inv = inv_mod(sorted_terms(f, order)[0].1, p);
    let mut rest = sorted_terms(g, order);
    let mut quot: Vec<(Monomial, i64)> = Vec::new();
    while let Some((lm, lc)) = rest.first().cloned() {
        assert!(fs[0].0.divides(&lm), "division is not exact");
        let q = lm.div(&fs[0].0);
        quot.push((q.clone(), lc as i64));
        rest = sub_scaled(&rest, lc, &q, &fs, order, p);
    }
    Polynomial::from_terms(&g.ring, quot).scale(lc_inv as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

/// Standard monomials of `F[x]/I` when finitely many, in increasing order.
pub fn standard_monomials(i: &Ideal) -> Option<Vec<Monomial>> {
    let lms = i.leading_monomials();
    let n = i.ring.nvars();
    let mut caps = vec![u32::MAX; n];
    for m in &lms {
        let support: Vec<usize> = (0..n).filter(|&v| m.0[v] > 0).collect();
        if support.len() == 1 {
            caps[support[0]] = caps[support[0]].min(m.0[support[0]]);
        }
    }
    if lms.iter().any(|m| m.degree() == 0) {
        return Some(vec![]);
    }
    if caps.contains(&u32::MAX) {
        return None;
    }
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    'walk: loop {
        let m = Monomial(e.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        for v in (0..n).rev() {
            if e[v] + 1 < caps[v] {
                e[v] += 1;
                continue 'walk;
            }
            e[v] = 0;
        }
        break;
    }
    out.sort_by(|a, b| i.order.cmp(a, b));
    Some(out)
}

pub fn quotient_dimension(i: &Ideal) -> QuotientDimension {
    match standard_monomials(i) {
        Some(ms) => QuotientDimension::Finite(ms.len() as u64),
        None => QuotientDimension::Infinite,
    }
}

/// Rank of a dense matrix over `F_p`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `monomials` form an `F`-basis of the finite-dimensional quotient
/// `F[x]/I`; `None` when the quotient is infinite-dimensional.
pub fn is_monomial_basis(i: &Ideal, monomials: &[Monomial]) -> Option<bool> {
    let std = standard_monomials(i)?;
    if monomials.len() != std.len() {
        return Some(false);
    }
    let index: std::collections::BTreeMap<&Monomial, usize> = std.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let rows = monomials
        .iter()
        .map(|m| {
            let mut row = vec![0u64; std.len()];
            for (t, c) in normal_form(&Polynomial::monomial(&i.ring, m.clone()), i).terms {
                row[index[&t]] = c;
            }
            row
        })
        .collect();
    Some(rank_mod_p(rows, i.ring.p) == std.len())
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `F[x]/(mons)`.
pub fn hilbert_numerator(mons: &[Monomial], n: usize) -> Vec<i64> {
    fn minimalize(mons: &[Monomial]) -> Vec<Monomial> {
        let mut ms: Vec<Monomial> = mons.to_vec();
        ms.sort_by_key(|m| m.degree());
        ms.dedup();
        let mut out: Vec<Monomial> = Vec::new();
        for m in ms {
            if !out.iter().any(|o| o.divides(&m)) {
                out.push(m);
            }
        }
        out
    }
    fn rec(mons: Vec<Monomial>) -> Vec<i64> {
        let mut ms = minimalize(&mons);
        let Some(last) = ms.pop() else {
            return vec![1];
        };
        // N(I) = N(I') - t^deg(m) N(I' : m)
        let colon: Vec<Monomial> =
            ms.iter().map(|g| Monomial(g.0.iter().zip(&last.0).map(|(a, b)| a.saturating_sub(*b)).collect())).collect();
        let a = rec(ms);
        let b = rec(colon);
        let shift = last.degree() as usize;
        let mut out = vec![0i64; a.len().max(b.len() + shift)];
        for (k, x) in a.iter().enumerate() {
            out[k] += x;
        }
        for (k, x) in b.iter().enumerate() {
            out[k + shift] -= x;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }
    debug_assert!(mons.iter().all(|m| m.0.len() == n));
    rec(mons.to_vec())
}

/// `dim_F (F[x]/I)_d` for `d = 0..=max_degree`, from a Hilbert numerator.
pub fn hilbert_function(numerator: &[i64], n: usize, max_degree: usize) -> Vec<i64> {
    // coefficients of 1 / (1 - t)^n are binomial(d + n - 1, n - 1)
    let binom = |d: usize| -> i64 {
        if n == 0 {
            return (d == 0) as i64;
        }
        let mut acc: i128 = 1;
        for k in 1..n {
            acc = acc * (d + k) as i128 / k as i128;
        }
        acc as i64
    };
    (0..=max_degree)
        .map(|d| numerator.iter().enumerate().filter(|(k, _)| *k <= d).map(|(k, c)| c * binom(d - k)).sum())
        .collect()
}

fn poly_mul_one_minus_power(a: &[i64], e: usize) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + e];
    for (k, x) in a.iter().enumerate() {
        out[k] += x;
        out[k + e] -= x;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Outcome of a regular-sequence test, with the Hilbert-series numerators of
/// the successive quotients as certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularSequenceReport {
    pub regular: bool,
    /// Index of the first element that is a zero divisor (or makes the
    /// quotient vanish).
    pub failed_at: Option<usize>,
    /// `numerators[j]` belongs to `F[x] / (I + (f_1..f_j))`.
    pub numerators: Vec<Vec<i64>>,
    pub degree_bound: u32,
}

/// Decides whether homogeneous `elements` form a regular sequence on
/// `F[x]/I` for homogeneous `I`. An element `f` of degree `e` is regular on a
/// graded quotient `Q` exactly when `HS(Q/f) = (1 - t^e) HS(Q)`, which is
/// checked on the exact Hilbert-series numerators. The degree bound caps the
/// Groebner basis degrees and the numerator degrees that are accepted as a
/// certificate.
pub fn is_regular_sequence(
    elements: &[Polynomial],
    i: &Ideal,
    degree_bound: u32,
) -> Result<RegularSequenceReport, PolyError> {
    for g in i.generators.iter().chain(elements) {
        if g.ring != i.ring {
            return Err(PolyError::RingMismatch);
        }
        if !g.is_homogeneous() {
            return Err(PolyError::NotHomogeneous(g.to_string()));
        }
    }
    let n = i.ring.nvars();
    let check_bound = |q: &Ideal| -> Result<Vec<i64>, PolyError> {
        let needed = q.basis().iter().filter_map(Polynomial::total_degree).max().unwrap_or(0);
        if needed > degree_bound {
            return Err(PolyError::InconclusiveAtBound { bound: degree_bound, needed });
        }
        let num = hilbert_numerator(&q.leading_monomials(), n);
        let nd = num.len() as u32 - 1;
        if nd > degree_bound {
            return Err(PolyError::InconclusiveAtBound { bound: degree_bound, needed: nd });
        }
        Ok(num)
    };
    let mut q = i.with_order(MonomialOrder::Grevlex);
    let mut numerators = vec![check_bound(&q)?];
    for (j, f) in elements.iter().enumerate() {
        let e = match f.total_degree() {
            Some(e) if !q.is_whole_ring() => e,
            _ => {
                return Ok(RegularSequenceReport { regular: false, failed_at: Some(j), numerators, degree_bound });
            }
        };
        let mut gens = q.generators.clone();
        gens.push(f.clone());
        q = Ideal::new(&i.ring, gens, MonomialOrder::Grevlex)?;
        let num = check_bound(&q)?;
        let expected = poly_mul_one_minus_power(numerators.last().unwrap(), e as usize);
        let ok = num == expected && !q.is_whole_ring();
        numerators.push(num);
        if !ok {
            return Ok(RegularSequenceReport { regular: false, failed_at: Some(j), numerators, degree_bound });
        }
    }
    Ok(RegularSequenceReport { regular: true, failed_at: None, numerators, degree_bound })
}

/// Every S-polynomial of the basis reduces to zero modulo the basis.
pub fn satisfies_buchberger_criterion(i: &Ideal) -> bool {
    let basis = i.basis_terms();
    let p = i.ring.p;
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let s = s_polynomial(&basis[a], &basis[b], i.order, p);
            if !reduce_full(s, &basis, i.order, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// JSON wire form: `{"vars": [...], "char": p, "gens": ["...", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub gens: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<MonomialOrder>,
}

impl IdealJson {
    pub fn to_ideal(&self) -> Result<Ideal, PolyError> {
        let ring = PolyRing::new(&self.vars, self.characteristic)?;
        Ideal::parse(&ring, &self.gens, self.order.unwrap_or_default())
    }

    pub fn from_ideal(i: &Ideal) -> IdealJson {
        IdealJson {
            vars: i.ring.vars.clone(),
            characteristic: i.ring.p,
            gens: i.generators.iter().map(|g| g.display_in(i.order)).collect(),
            order: (i.order != MonomialOrder::Grevlex).then_some(i.order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, 101).unwrap()
    }

    fn steinberg_minors(r: &Arc<PolyRing>) -> Ideal {
        Ideal::parse(
            r,
            &["A^2 - B*C", "A*Z - C*X", "A*X - C*Y", "B*Z - A*X", "B*X - A*Y", "X^2 - Y*Z"],
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = ring(&["x", "y", "z"]);
        let f = Polynomial::parse(&r, "(x + y)^2 - 2*x*y - y^2").unwrap();
        assert_eq!(f.to_string(), "x^2");
        let g = Polynomial::parse(&r, "-x*z + 3 - y").unwrap();
        assert_eq!(g.to_string(), "-x*z - y + 3");
        assert!(matches!(Polynomial::parse(&r, "w"), Err(PolyError::UnknownVariable(_))));
        assert!(matches!(Polynomial::parse(&r, "x +"), Err(PolyError::Parse { .. })));
        assert!(matches!(Polynomial::parse(&r, "x y"), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn ring_validation() {
        assert_eq!(PolyRing::new(&["x"], 4).unwrap_err(), PolyError::NotPrime(4));
        assert!(PolyRing::new(&["x", "x"], 5).is_err());
        assert!(PolyRing::new(&["1x"], 5).is_err());
    }

    #[test]
    fn orders() {
        let a = Monomial(vec![1, 0, 2]);
        let b = Monomial(vec![0, 3, 0]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        // equal degree; grevlex prefers the smaller power of the last variable
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
        assert_eq!(
            MonomialOrder::Elimination(1).cmp(&Monomial(vec![1, 0, 0]), &Monomial(vec![0, 5, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn groebner_of_two_quadrics() {
        // y = x^2 and x = y^2 force x^4 = x
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2 - y", "y^2 - x"], MonomialOrder::Grevlex).unwrap();
        let lms = i.leading_monomials();
        assert!(lms.contains(&Monomial(vec![2, 0])));
        assert!(lms.contains(&Monomial(vec![0, 2])));
        assert_eq!(normal_form(&Polynomial::parse(&r, "x^4").unwrap(), &i).to_string(), "x");
        assert!(satisfies_buchberger_criterion(&i));
        assert_eq!(quotient_dimension(&i), QuotientDimension::Finite(4));
    }

    #[test]
    fn trivial_bases() {
        let r = ring(&["x", "y"]);
        let zero = Ideal::new(&r, vec![], MonomialOrder::Grevlex).unwrap();
        assert!(zero.basis().is_empty());
        assert_eq!(quotient_dimension(&zero), QuotientDimension::Infinite);
        let x = Ideal::parse(&r, &["x"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(groebner_basis(&x).generators(), &[Polynomial::var(&r, 0)]);
        let unit = Ideal::parse(&r, &["x", "x + 1"], MonomialOrder::Grevlex).unwrap();
        assert!(unit.is_whole_ring());
        assert_eq!(quotient_dimension(&unit), QuotientDimension::Finite(0));
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["A", "B", "C", "X", "Y", "Z"]);
        let i = steinberg_minors(&r);
        for g in i.generators() {
            assert!(normal_form(g, &i).is_zero());
        }
        let one = Polynomial::constant(&r, 1);
        assert_eq!(normal_form(&one, &i), one);
    }

    #[test]
    fn equality() {
        let r = ring(&["x", "y"]);
        let a = Ideal::parse(&r, &["x"], MonomialOrder::Grevlex).unwrap();
        let b = Ideal::parse(&r, &["x", "x^2"], MonomialOrder::Grevlex).unwrap();
        let c = Ideal::parse(&r, &["x^2"], MonomialOrder::Grevlex).unwrap();
        assert!(ideal_equal(&a, &b));
        assert!(!ideal_equal(&a, &c));
        assert!(ideal_equal(&a, &b.with_order(MonomialOrder::Lex)));
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"]);
        let xy = Ideal::parse(&r, &["x*y"], MonomialOrder::Grevlex).unwrap();
        let sat = saturate(&xy, &Polynomial::var(&r, 0));
        assert!(ideal_equal(&sat, &Ideal::parse(&r, &["y"], MonomialOrder::Grevlex).unwrap()));

        // a prime ideal not containing f is its own saturation
        let prime = Ideal::parse(&r, &["x^2 - y"], MonomialOrder::Grevlex).unwrap();
        assert!(ideal_equal(&saturate(&prime, &Polynomial::var(&r, 0)), &prime));
    }

    #[test]
    fn lattice_ideal_saturates_to_minors() {
        let r = ring(&["A", "B", "C", "X", "Y", "Z"]);
        let il = Ideal::parse(&r, &["A*Z - C*X", "A*X - C*Y", "A*X - B*Z"], MonomialOrder::Grevlex).unwrap();
        let f = Polynomial::parse(&r, "A*B*C*X*Y*Z").unwrap();
        let sat = saturate(&il, &f);
        assert!(ideal_equal(&sat, &steinberg_minors(&r)));
        assert!(ideal_equal(&saturate(&sat, &f), &sat));
    }

    #[test]
    fn artinian_quotient_of_minors() {
        let r = ring(&["A", "B", "C", "X", "Y", "Z"]);
        let mut gens = steinberg_minors(&r).generators().to_vec();
        for s in ["C", "Y", "B - Z"] {
            gens.push(Polynomial::parse(&r, s).unwrap());
        }
        let q = Ideal::new(&r, gens, MonomialOrder::Grevlex).unwrap();
        let std = standard_monomials(&q).unwrap();
        let names: Vec<String> = std.iter().map(|m| Polynomial::monomial(&r, m.clone()).to_string()).collect();
        // B is a leading term of B - Z, so Z stands in for B
        assert_eq!(names, vec!["1", "Z", "X", "A"]);
        let mono = |s: &str| Polynomial::parse(&r, s).unwrap().terms()[0].0.clone();
        let listed: Vec<Monomial> = ["1", "A", "B", "X"].iter().map(|s| mono(s)).collect();
        assert_eq!(is_monomial_basis(&q, &listed), Some(true));
        let wrong: Vec<Monomial> = ["1", "A", "B", "Z"].iter().map(|s| mono(s)).collect();
        assert_eq!(is_monomial_basis(&q, &wrong), Some(false));
    }

    #[test]
    fn intersection_and_quotient() {
        let r = ring(&["x", "y"]);
        let a = Ideal::parse(&r, &["x"], MonomialOrder::Grevlex).unwrap();
        let b = Ideal::parse(&r, &["y"], MonomialOrder::Grevlex).unwrap();
        let ab = Ideal::parse(&r, &["x*y"], MonomialOrder::Grevlex).unwrap();
        assert!(ideal_equal(&ideal_intersection(&a, &b), &ab));
        assert!(ideal_equal(&ideal_product(&a, &b), &ab));
        let q = ideal_quotient(&ab, &Polynomial::var(&r, 0));
        assert!(ideal_equal(&q, &b));
        let s = ideal_sum(&a, &b);
        assert_eq!(quotient_dimension(&s), QuotientDimension::Finite(1));
    }

    #[test]
    fn hilbert_numerators() {
        // F[x,y]/(x^2): (1 - t^2) / (1 - t)^2
        assert_eq!(hilbert_numerator(&[Monomial(vec![2, 0])], 2), vec![1, 0, -1]);
        assert_eq!(hilbert_numerator(&[], 3), vec![1]);
        let hf = hilbert_function(&[1, 0, -1], 2, 4);
        assert_eq!(hf, vec![1, 2, 2, 2, 2]);
        // twisted cubic style: (1 + 2t) / (1 - t)^2 in 4 variables
        let n = hilbert_numerator(&[Monomial(vec![1, 0, 0, 0]), Monomial(vec![0, 1, 0, 0])], 4);
        assert_eq!(n, vec![1, -2, 1]);
    }

    #[test]
    fn regular_sequences() {
        let r = ring(&["x", "y"]);
        let zero = Ideal::new(&r, vec![], MonomialOrder::Grevlex).unwrap();
        let x = Polynomial::var(&r, 0);
        assert!(is_regular_sequence(std::slice::from_ref(&x), &zero, 12).unwrap().regular);
        let rep = is_regular_sequence(&[x.clone(), x.clone()], &zero, 12).unwrap();
        assert!(!rep.regular);
        assert_eq!(rep.failed_at, Some(1));
        let inhom = Polynomial::parse(&r, "x + 1").unwrap();
        assert!(matches!(is_regular_sequence(&[inhom], &zero, 12), Err(PolyError::NotHomogeneous(_))));
    }

    #[test]
    fn regular_sequence_on_minors_quotient() {
        let r = ring(&["A", "B", "C", "X", "Y", "Z"]);
        let i = steinberg_minors(&r);
        let seq: Vec<Polynomial> = ["C", "Y", "B - Z"].iter().map(|s| Polynomial::parse(&r, s).unwrap()).collect();
        let rep = is_regular_sequence(&seq, &i, 12).unwrap();
        assert!(rep.regular);
        // HS(S) = (1 + 3t) / (1 - t)^3
        assert_eq!(
            rep.numerators[0],
            poly_mul_one_minus_power(&poly_mul_one_minus_power(&poly_mul_one_minus_power(&[1, 3], 1), 1), 1)
        );
        assert!(matches!(is_regular_sequence(&seq, &i, 3), Err(PolyError::InconclusiveAtBound { .. })));
        // A is a zero divisor modulo (C, Y, B - Z): A * A = B C = 0 there
        let bad: Vec<Polynomial> = ["C", "Y", "B - Z", "A"].iter().map(|s| Polynomial::parse(&r, s).unwrap()).collect();
        assert!(!is_regular_sequence(&bad, &i, 12).unwrap().regular);
    }

    #[test]
    fn json_round_trip() {
        let j = IdealJson {
            vars: vec!["x".into(), "y".into()],
            characteristic: 7,
            gens: vec!["x^2 - y".into()],
            order: None,
        };
        let i = j.to_ideal().unwrap();
        assert_eq!(IdealJson::from_ideal(&i), j);
    }
}
