//! Sparse multivariate polynomials.
//!
//! Coefficients are generic so the same code serves exact rationals,
//! Gaussian rationals and `Complex64`. Exponent vectors are the keys of a
//! `BTreeMap`, so iteration order is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, One, Signed};

use crate::error::{Error, Result};
use crate::number::{format_rational, parse_rational, rat, Rational};

pub type Monomial = Vec<u32>;

pub trait Coeff: Num + Clone + Neg<Output = Self> + fmt::Debug {}
impl<T: Num + Clone + Neg<Output = T> + fmt::Debug> Coeff for T {}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<T> {
    nvars: usize,
    terms: BTreeMap<Monomial, T>,
}

pub fn total_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Graded lexicographic comparison.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| a.cmp(b))
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn from_count<T: Coeff>(n: u32) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        k >>= 1;
    }
    acc
}

impl<T: Coeff> Poly<T> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, T::one())
    }

    pub fn monomial(m: Monomial, c: T) -> Self {
        let mut p = Poly::zero(m.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, T)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, T> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, T> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| total_degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| total_degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut p = Poly::zero(self.nvars);
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Poly::constant(self.nvars, T::one());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars);
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// Replaces variable `i` by `images[i]` (all in a common ring of `n` variables).
    pub fn substitute(&self, images: &[Poly<T>]) -> Poly<T> {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Poly<T>>> = images
            .iter()
            .map(|p| vec![Poly::constant(target, T::one()), p.clone()])
            .collect();
        let mut result = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            result = &result + &term;
        }
        result
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[i] -= 1;
            p.add_term(dm, c.clone() * from_count::<T>(m[i]));
        }
        p
    }

    /// Leading term under the given monomial order.
    pub fn leading(&self, order: fn(&[u32], &[u32]) -> Ordering) -> Option<(&Monomial, &T)> {
        self.terms.iter().max_by(|a, b| order(a.0, b.0))
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    /// Divides every term by `x_i^k`; fails if some term has lower degree in `x_i`.
    pub fn divide_by_var_power(&self, i: usize, k: u32) -> Option<Self> {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] < k {
                return None;
            }
            let mut q = m.clone();
            q[i] -= k;
            p.add_term(q, c.clone());
        }
        Some(p)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).min().unwrap_or(0)
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        self.scale(&-T::one())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        let mut acc: BTreeMap<Monomial, T> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let m: Monomial = a.iter().zip(b).map(|(i, j)| i + j).collect();
                let c = x.clone() * y.clone();
                let slot = acc.entry(m).or_insert_with(T::zero);
                *slot = slot.clone() + c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { nvars: self.nvars.max(rhs.nvars), terms: acc }
    }
}

pub type RatPoly = Poly<Rational>;

impl RatPoly {
    /// Scales so the grlex-leading coefficient is 1.
    pub fn normalized(&self) -> RatPoly {
        match self.leading(grlex) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rational::one() / c;
                self.scale(&inv)
            }
        }
    }

    /// Whether `self = c · other` for a nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &RatPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalized() == other.normalized()
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // Descending grlex reads naturally.
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{e}", names[i]) })
                .collect();
            if vars.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }

    /// Monomial map with exact rational strings, keyed by the rendered monomial.
    pub fn to_monomial_map(&self, names: &[&str]) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(m, c)| (monomial_name(m, names), format_rational(c)))
            .collect()
    }

    pub fn parse(text: &str, names: &[&str]) -> Result<RatPoly> {
        Parser::new(text, names)?.parse()
    }
}

pub fn monomial_name(m: &[u32], names: &[&str]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{e}", names[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Parses a monomial rendered by [`monomial_name`].
pub fn parse_monomial(text: &str, names: &[&str]) -> Result<Monomial> {
    let p = RatPoly::parse(text, names)?;
    if p.len() != 1 || !p.terms.values().next().is_some_and(|c| c.is_one()) {
        return Err(Error::parse(format!("`{text}` is not a monomial")));
    }
    Ok(p.terms.into_keys().next().unwrap())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Ident(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn new(text: &str, names: &[&str]) -> Result<Self> {
        let text = text.replace('\u{2212}', "-");
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' | '\n' => i += 1,
                '+' => { tokens.push(Token::Plus); i += 1 }
                '-' => { tokens.push(Token::Minus); i += 1 }
                '*' => { tokens.push(Token::Star); i += 1 }
                '^' => { tokens.push(Token::Caret); i += 1 }
                '(' => { tokens.push(Token::LParen); i += 1 }
                ')' => { tokens.push(Token::RParen); i += 1 }
                d if d.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                        i += 1;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                    let s: String = chars[start..i].iter().collect();
                    tokens.push(Token::Num(parse_rational(&s)?));
                }
                a if a.is_alphabetic() || a == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let idx = names
                        .iter()
                        .position(|n| *n == s)
                        .ok_or_else(|| Error::parse(format!("unknown variable `{s}`")))?;
                    tokens.push(Token::Ident(idx));
                }
                other => return Err(Error::parse(format!("unexpected character `{other}`"))),
            }
        }
        Ok(Parser { tokens, pos: 0, nvars: names.len() })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn parse(mut self) -> Result<RatPoly> {
        let p = self.expr()?;
        if self.pos != self.tokens.len() {
            return Err(Error::parse(format!("trailing input at token {}", self.pos)));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatPoly> {
        let base = self.unary()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) if n.is_integer() && !n.is_negative() => {
                    self.pos += 1;
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::parse("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::parse("exponent must be a nonnegative integer")),
            }
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<RatPoly> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<RatPoly> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(q)) => Ok(Poly::constant(self.nvars, q)),
            Some(Token::Ident(i)) => Ok(Poly::var(self.nvars, i)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(Error::parse("missing `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(Error::parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion over
/// column subsets (no division, so it works over any coefficient ring).
pub fn determinant<T: Coeff>(matrix: &[Vec<Poly<T>>], nvars: usize) -> Poly<T> {
    let n = matrix.len();
    if n == 0 {
        return Poly::constant(nvars, T::one());
    }
    assert!(n <= 20, "determinant size");
    // minors[mask] = det of rows (n - popcount(mask))..n restricted to columns in mask.
    let mut minors: std::collections::HashMap<u32, Poly<T>> = std::collections::HashMap::new();
    minors.insert(0, Poly::constant(nvars, T::one()));
    for size in 1..=n {
        let row = n - size;
        let mut next = std::collections::HashMap::new();
        for (&mask, _) in minors.iter() {
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let full = mask | (1 << col);
                if next.contains_key(&full) {
                    continue;
                }
                // Expand along `row` over columns in `full`.
                let mut acc = Poly::zero(nvars);
                let mut sign_pos = true;
                for c in 0..n {
                    if full & (1 << c) == 0 {
                        continue;
                    }
                    let rest = full & !(1 << c);
                    let entry = &matrix[row][c];
                    if !entry.is_zero() {
                        let prod = entry * &minors[&rest];
                        acc = if sign_pos { &acc + &prod } else { &acc - &prod };
                    }
                    sign_pos = !sign_pos;
                }
                next.insert(full, acc);
            }
        }
        minors = next;
    }
    minors.remove(&((1u32 << n) - 1)).unwrap()
}

/// Sylvester matrix of two univariate polynomials given by coefficient lists
/// (highest degree first), entries taken from an arbitrary polynomial ring.
pub fn sylvester_matrix<T: Coeff>(a: &[Poly<T>], b: &[Poly<T>], nvars: usize) -> Vec<Vec<Poly<T>>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(nvars); size];
        for (j, c) in a.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(nvars); size];
        for (j, c) in b.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two univariate polynomials with polynomial coefficients.
pub fn resultant<T: Coeff>(a: &[Poly<T>], b: &[Poly<T>], nvars: usize) -> Poly<T> {
    determinant(&sylvester_matrix(a, b, nvars), nvars)
}

fn lcm_monomial(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn monic(p: &RatPoly) -> RatPoly {
    match p.leading(grevlex) {
        None => p.clone(),
        Some((_, c)) => p.scale(&(Rational::one() / c)),
    }
}

/// Full reduction of `f` by `basis` in grevlex order.
fn reduce(f: &RatPoly, basis: &[RatPoly]) -> RatPoly {
    let mut p = f.clone();
    let mut remainder = Poly::zero(f.nvars);
    while let Some((lm, lc)) = p.leading(grevlex).map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find(|g| {
            g.leading(grevlex).is_some_and(|(gm, _)| divides(gm, &lm))
        });
        match divisor {
            Some(g) => {
                let (gm, gc) = g.leading(grevlex).unwrap();
                let shift: Monomial = lm.iter().zip(gm).map(|(a, b)| a - b).collect();
                let factor = Poly::monomial(shift, &lc / gc);
                p = &p - &(&factor * g);
            }
            None => {
                remainder.add_term(lm.clone(), lc);
                p.terms.remove(&lm);
            }
        }
    }
    remainder
}

/// Gröbner basis (grevlex) by Buchberger's algorithm with the coprime-leading-monomial criterion.
pub fn groebner_basis(generators: &[RatPoly]) -> Vec<RatPoly> {
    let mut basis: Vec<RatPoly> = generators.iter().filter(|g| !g.is_zero()).map(monic).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, _) = basis[i].leading(grevlex).unwrap();
        let (mj, _) = basis[j].leading(grevlex).unwrap();
        if mi.iter().zip(mj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm_monomial(mi, mj);
        let si: Monomial = l.iter().zip(mi).map(|(a, b)| a - b).collect();
        let sj: Monomial = l.iter().zip(mj).map(|(a, b)| a - b).collect();
        let s = &(&Poly::monomial(si, Rational::one()) * &basis[i])
            - &(&Poly::monomial(sj, Rational::one()) * &basis[j]);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(monic(&r));
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    basis
}

/// Whether the homogeneous ideal generated by `generators` has no projective zero,
/// i.e. every variable has a pure power among the leading monomials of a Gröbner basis.
pub fn has_no_projective_zero(generators: &[RatPoly], nvars: usize) -> bool {
    let basis = groebner_basis(generators);
    if basis.iter().any(|g| g.degree() == Some(0)) {
        return true;
    }
    (0..nvars).all(|v| {
        basis.iter().any(|g| {
            let (m, _) = g.leading(grevlex).unwrap();
            m[v] > 0 && m.iter().enumerate().all(|(k, &e)| k == v || e == 0)
        })
    })
}

pub fn rat_poly_const(nvars: usize, n: i64) -> RatPoly {
    Poly::constant(nvars, rat(n))
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.to_string_with(&refs))
    }
}
