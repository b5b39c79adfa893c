//! Exact homogeneous polynomials in `x0..xn` with rational coefficients.
//!
//! Monomials are ordered by graded reverse-lexicographic order everywhere in
//! the crate (`x0 > x1 > ... > xn`). The canonical printer emits terms in
//! decreasing order and its output parses back to the same polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// A monomial `x0^e0 * ... * xn^en`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Monomial {
            exponents: exponents.into_boxed_slice(),
            degree,
        }
    }

    pub fn one(n: usize) -> Self {
        Monomial::new(vec![0; n + 1])
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n + 1];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of variables minus one.
    pub fn n(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        let e = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial::new(e)
    }

    pub fn times_variable(&self, i: usize) -> Monomial {
        let mut e = self.exponents.to_vec();
        e[i] += 1;
        Monomial {
            exponents: e.into_boxed_slice(),
            degree: self.degree + 1,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        // grevlex: the last differing exponent decides, smaller exponent wins
        for (a, b) in self.exponents.iter().zip(other.exponents.iter()).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        self.exponents.len().cmp(&other.exponents.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `k` in `x0..xn`, in strictly increasing order.
pub fn monomial_basis(n: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n + 1];
    fill_exponents(&mut current, 0, k, &mut out);
    out.sort();
    out
}

fn fill_exponents(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill_exponents(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// `binom(k + n, n)`, the number of monomials of degree `k` in `n + 1` variables.
pub fn count_monomials(n: usize, k: u32) -> BigInt {
    binomial(k as u64 + n as u64, n as u64)
}

pub(crate) fn binomial(top: u64, bottom: u64) -> BigInt {
    if bottom > top {
        return BigInt::zero();
    }
    let bottom = bottom.min(top - bottom);
    let mut acc = BigInt::one();
    for i in 0..bottom {
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable x{index} at offset {offset} is out of range (variables are x0..x{n})")]
    VariableOutOfRange { offset: usize, index: usize, n: usize },
    #[error("non-numeric exponent at offset {offset}")]
    NonNumericExponent { offset: usize },
    #[error("variable index {index} out of range for x0..x{n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("polynomials live in different rings (n={left} vs n={right})")]
    RingMismatch { left: usize, right: usize },
}

/// Sparse polynomial: monomial to nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Polynomial::term(c, Monomial::one(n))
    }

    pub fn variable(n: usize, i: usize) -> Self {
        Polynomial::term(BigRational::one(), Monomial::variable(n, i))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let n = m.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            assert_eq!(m.n(), n, "monomial has wrong variable count");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn parse(text: &str, n: usize) -> Result<Self, PolyError> {
        Parser::new(text, n)?.parse()
    }

    /// Largest variable index mentioned in `text`, if any.
    pub fn max_variable_index(text: &str) -> Result<Option<usize>, PolyError> {
        let tokens = tokenize(text)?;
        Ok(tokens
            .iter()
            .filter_map(|t| match t.kind {
                Tok::Var(i) => Some(i),
                _ => None,
            })
            .max())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(first) => degs.all(|e| e == first),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn partial(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i > self.n {
            return Err(PolyError::IndexOutOfRange { index: i, n: self.n });
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponents[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents.to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * BigRational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn partials(&self) -> Vec<Polynomial> {
        (0..=self.n)
            .map(|i| self.partial(i).expect("index in range"))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(t, a)| (t.times(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.n, BigRational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The same polynomial scaled by a positive rational so that all
    /// coefficients are coprime integers.
    pub fn primitive_integer(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let factor = BigRational::new(lcm, g);
        self.scale(&factor)
    }

    /// Evaluates at a point given by rational coordinates.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.n + 1);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents.iter()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Squarefreeness test by restriction to `trials` random lines.
    /// FNV-1a hash of the canonical printed form; seeds reproducible
    /// randomized checks.
    pub fn fingerprint(&self) -> u64 {
        self.to_string()
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
    }

    pub fn is_squarefree(&self) -> bool {
        squarefree_check(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.degree() == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial(n={}, {})", self.n, self)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "ring mismatch");
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Ident,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    kind: Tok,
    offset: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                out.push(Token {
                    kind: Tok::Num(v),
                    offset: start,
                });
                continue;
            }
            b'x' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(PolyError::Syntax {
                        offset: start,
                        message: "expected a variable index after 'x'".into(),
                    });
                }
                let index = text[digits..i].parse().map_err(|_| PolyError::Syntax {
                    offset: start,
                    message: "variable index too large".into(),
                })?;
                out.push(Token {
                    kind: Tok::Var(index),
                    offset: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    kind: Tok::Ident,
                    offset: start,
                });
                continue;
            }
            _ => {
                return Err(PolyError::Syntax {
                    offset: start,
                    message: format!("unexpected character {:?}", text[start..].chars().next().unwrap()),
                })
            }
        };
        i += 1;
        out.push(Token { kind, offset: start });
    }
    out.push(Token {
        kind: Tok::End,
        offset: text.len(),
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn new(text: &str, n: usize) -> Result<Self, PolyError> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            n,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: &str) -> Result<T, PolyError> {
        let t = self.peek();
        let found = match t.kind {
            Tok::End => "end of input".to_string(),
            _ => format!("{:?}", t.kind),
        };
        Err(PolyError::Syntax {
            offset: t.offset,
            message: format!("{message}, found {found}"),
        })
    }

    fn parse(mut self) -> Result<Polynomial, PolyError> {
        let p = self.expr()?;
        if self.peek().kind != Tok::End {
            return self.error("expected an operator");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().kind {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().kind {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Tok::Num(_) | Tok::Var(_) | Tok::LParen => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek().kind {
            Tok::Minus => {
                self.bump();
                Ok(-&self.factor()?)
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => {
                let base = self.primary()?;
                if self.peek().kind == Tok::Caret {
                    self.bump();
                    let t = self.peek().clone();
                    match t.kind {
                        Tok::Num(ref e) => {
                            let e: u32 = match u32::try_from(e) {
                                Ok(e) if e >= 1 => e,
                                Ok(_) => {
                                    return Err(PolyError::Syntax {
                                        offset: t.offset,
                                        message: "exponent must be at least 1".into(),
                                    })
                                }
                                Err(_) => {
                                    return Err(PolyError::Syntax {
                                        offset: t.offset,
                                        message: "exponent too large".into(),
                                    })
                                }
                            };
                            self.bump();
                            Ok(base.pow(e))
                        }
                        Tok::End => self.error("expected an exponent"),
                        _ => Err(PolyError::NonNumericExponent { offset: t.offset }),
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn primary(&mut self) -> Result<Polynomial, PolyError> {
        let t = self.peek().clone();
        match t.kind {
            Tok::Num(p) => {
                self.bump();
                if self.peek().kind == Tok::Slash {
                    self.bump();
                    match self.peek().kind.clone() {
                        Tok::Num(q) if !q.is_zero() => {
                            self.bump();
                            Ok(Polynomial::constant(self.n, BigRational::new(p, q)))
                        }
                        Tok::Num(_) => self.error("zero denominator"),
                        _ => self.error("expected an integer denominator"),
                    }
                } else {
                    Ok(Polynomial::constant(self.n, BigRational::from_integer(p)))
                }
            }
            Tok::Var(index) => {
                if index > self.n {
                    return Err(PolyError::VariableOutOfRange {
                        offset: t.offset,
                        index,
                        n: self.n,
                    });
                }
                self.bump();
                Ok(Polynomial::variable(self.n, index))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().kind != Tok::RParen {
                    return self.error("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.error("expected a number, variable or '('"),
        }
    }
}

// ---------------------------------------------------------------------------
// squarefreeness

/// Default number of random lines tried by [`squarefree_check`].
pub const DEFAULT_SQUAREFREE_TRIALS: usize = 3;

/// Returns true when `f` has no repeated factor, judged on random lines.
pub fn squarefree_check(f: &Polynomial) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(f.fingerprint());
    squarefree_check_with(f, DEFAULT_SQUAREFREE_TRIALS, &mut rng)
}

/// Restricts `f` to lines `a + t*b` with random integer `a`, `b` and tests
/// `gcd(g, g')` for the univariate restriction `g`. A line on which `g` keeps
/// full degree and is squarefree certifies that `f` is reduced; a repeated
/// factor of `f` shows up on every such line.
pub fn squarefree_check_with<R: Rng>(f: &Polynomial, trials: usize, rng: &mut R) -> bool {
    let d = match f.degree() {
        Some(d) if d >= 1 => d as usize,
        _ => return false,
    };
    let mut valid = 0;
    let mut attempts = 0;
    while valid < trials.max(1) && attempts < 16 * trials.max(1) {
        attempts += 1;
        let a: Vec<i64> = (0..=f.n()).map(|_| rng.gen_range(-(1 << 20)..=(1 << 20))).collect();
        let b: Vec<i64> = (0..=f.n()).map(|_| rng.gen_range(-(1 << 20)..=(1 << 20))).collect();
        let g = restrict_to_line(f, &a, &b);
        if g.len() != d + 1 {
            // the line meets the hypersurface at infinity
            continue;
        }
        valid += 1;
        let dg = uni_derivative(&g);
        if uni_gcd(g, dg).len() == 1 {
            return true;
        }
    }
    false
}

type UniPoly = Vec<BigRational>;

fn uni_trim(mut p: UniPoly) -> UniPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn uni_mul(a: &[BigRational], b: &[BigRational]) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn restrict_to_line(f: &Polynomial, a: &[i64], b: &[i64]) -> UniPoly {
    let lines: Vec<UniPoly> = a
        .iter()
        .zip(b)
        .map(|(&ai, &bi)| vec![BigRational::from_integer(ai.into()), BigRational::from_integer(bi.into())])
        .collect();
    let mut total: UniPoly = Vec::new();
    for (m, c) in f.terms() {
        let mut acc = vec![c.clone()];
        for (line, &e) in lines.iter().zip(m.exponents()) {
            for _ in 0..e {
                acc = uni_mul(&acc, line);
            }
        }
        if total.len() < acc.len() {
            total.resize(acc.len(), BigRational::zero());
        }
        for (t, v) in total.iter_mut().zip(acc) {
            *t += v;
        }
    }
    uni_trim(total)
}

fn uni_derivative(p: &[BigRational]) -> UniPoly {
    uni_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer((i as i64).into()))
            .collect(),
    )
}

fn uni_rem(mut a: UniPoly, b: &[BigRational]) -> UniPoly {
    let lead = b.last().expect("nonzero divisor");
    while a.len() >= b.len() && !a.is_empty() {
        let q = a.last().unwrap() / lead;
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &q * c;
        }
        a = uni_trim(a);
    }
    a
}

fn uni_gcd(mut a: UniPoly, mut b: UniPoly) -> UniPoly {
    while !b.is_empty() {
        let r = uni_rem(a, &b);
        a = b;
        b = r;
        // keep the sizes of coefficients in check
        if let Some(l) = b.last().cloned() {
            b.iter_mut().for_each(|c| *c /= &l);
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn parses_fermat_cubic() {
        let f = p("x0^3+x1^3+x2^3", 2);
        assert_eq!(f.len(), 3);
        assert_eq!(f.degree(), Some(3));
        assert!(f.is_homogeneous());
        assert_eq!(f.to_string(), "x0^3 + x1^3 + x2^3");
    }

    #[test]
    fn parses_product_plus_cube() {
        let f = p("x0*x1*x2 + x3^3", 3);
        assert_eq!(f.len(), 2);
        assert_eq!(f.degree(), Some(3));
    }

    #[test]
    fn dangling_caret_is_a_syntax_error_at_end() {
        match Polynomial::parse("x0^", 2) {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_range_variable_and_bad_exponent() {
        assert!(matches!(
            Polynomial::parse("x0 + x5", 2),
            Err(PolyError::VariableOutOfRange { index: 5, offset: 5, .. })
        ));
        assert!(matches!(
            Polynomial::parse("x0^x1", 2),
            Err(PolyError::NonNumericExponent { offset: 3 })
        ));
        assert!(matches!(Polynomial::parse("x0^0", 2), Err(PolyError::Syntax { .. })));
        assert!(matches!(Polynomial::parse("(x0+x1", 2), Err(PolyError::Syntax { offset: 6, .. })));
        assert!(matches!(Polynomial::parse("y + x0", 2), Err(PolyError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn rational_coefficients_and_implicit_products() {
        let f = p("1/2 x0 x1 - 3(x1 - x2)^2", 2);
        assert_eq!(f.to_string(), "1/2*x0*x1 - 3*x1^2 + 6*x1*x2 - 3*x2^2");
        assert_eq!(p(&f.to_string(), 2), f);
        assert_eq!(p("-x0^2", 2).to_string(), "-x0^2");
        assert_eq!(p("x0 - x0", 2).to_string(), "0");
        assert_eq!(p("x0 - x0", 2).degree(), None);
        assert_eq!(p("5", 2).degree(), Some(0));
    }

    #[test]
    fn partial_derivatives() {
        let f = p("x0*x1*x2 + x3^3", 3);
        assert_eq!(f.partial(3).unwrap(), p("3*x3^2", 3));
        let g = p("x0^3+x1^3+x2^3", 2);
        assert_eq!(g.partial(0).unwrap(), p("3x0^2", 2));
        let h = p("x0*x1*x2", 3);
        assert!(h.partial(3).unwrap().is_zero());
        assert!(matches!(h.partial(4), Err(PolyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn monomial_basis_sizes_and_order() {
        assert_eq!(monomial_basis(2, 2).len(), 6);
        assert_eq!(monomial_basis(3, 0), vec![Monomial::one(3)]);
        assert_eq!(monomial_basis(3, 4).len(), 35);
        let b = monomial_basis(2, 2);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        // grevlex in three variables: x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
        let expected = ["x2^2", "x1*x2", "x0*x2", "x1^2", "x0*x1", "x0^2"];
        let got: Vec<String> = b.iter().map(ToString::to_string).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn squarefree_examples() {
        assert!(!squarefree_check(&p("x0^2*x1", 2)));
        assert!(squarefree_check(&p("x0*x1*x2 + x3^3", 3)));
        assert!(squarefree_check(&p("x0*x1*(x0+x1)", 2)));
        assert!(!squarefree_check(&p("(x0+x1+x2)^2*(x0-x2)", 2)));
        assert!(squarefree_check(&p("x0^3+x1^3+x2^3", 2)));
    }

    #[test]
    fn primitive_integer_scaling() {
        let f = p("1/2 x0^2 + 3/4 x1^2", 1);
        assert_eq!(f.primitive_integer(), p("2x0^2 + 3x1^2", 1));
    }
}
