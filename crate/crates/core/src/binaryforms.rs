//! Exact `SL(2)` oracle for pairs of binary forms given by their roots.
//!
//! A pair `(f, g)` with `deg f = e`, `deg g = d` is semistable iff `e ≤ d`
//! and `ord_p(g) − ord_p(f) ≤ (d − e)/2` at every point `p` of `P¹`. Points
//! are `[a:b]` in the coordinates `(x:y)`, so `x` vanishes at `[0:1]` and
//! `y` at `[1:0]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Matrix};
use crate::number::{format_rational, parse_rational, rat, Gaussian, Rational};
use crate::poly::RatPoly;
use crate::rep::{RepresentationSpec, WeightedVector};
use crate::lattice::Cocharacter;
use crate::stability::{destabilizer, pair_semistable_torus, pair_stable_torus, Pair, Status, Verdict};

/// A point of `P¹(Q)`, normalized to `[a:1]` or `[1:0]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct P1Point {
    a: Rational,
    b: Rational,
}

impl P1Point {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if b.is_zero() {
            if a.is_zero() {
                return Err(Error::domain("[0:0] is not a point"));
            }
            return Ok(P1Point { a: Rational::one(), b: Rational::zero() });
        }
        Ok(P1Point { a: a / &b, b: Rational::one() })
    }

    pub fn affine(a: Rational) -> Self {
        P1Point { a, b: Rational::one() }
    }

    pub fn infinity() -> Self {
        P1Point { a: Rational::one(), b: Rational::zero() }
    }

    pub fn coordinates(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    /// The linear form `b·x − a·y` vanishing here (`x − a·y` or `−y`).
    fn linear_form(&self) -> (Rational, Rational) {
        (self.b.clone(), -self.a.clone())
    }

    /// `σ·p` for the Möbius action of an exact `2×2` matrix.
    pub fn moved_by(&self, sigma: &ExactMatrix) -> Result<Self> {
        let get = |i, j| real(sigma.get(i, j));
        let (g00, g01, g10, g11) = (get(0, 0)?, get(0, 1)?, get(1, 0)?, get(1, 1)?);
        P1Point::new(&g00 * &self.a + &g01 * &self.b, &g10 * &self.a + &g11 * &self.b)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = t
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("points look like [a:b], got `{text}`")))?;
        P1Point::new(parse_rational(a)?, parse_rational(b)?)
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", format_rational(&self.a), format_rational(&self.b))
    }
}

impl Serialize for P1Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for P1Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        P1Point::parse(&s).map_err(serde::de::Error::custom)
    }
}

fn real(z: &Gaussian) -> Result<Rational> {
    if !z.im.is_zero() {
        return Err(Error::domain("Möbius action needs a real matrix"));
    }
    Ok(z.re.clone())
}

/// `scale · Π (b_i x − a_i y)^{m_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    degree: u32,
    factors: BTreeMap<P1Point, u32>,
    scale: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub root: P1Point,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryFormJson {
    pub factors: Vec<FactorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
}

impl BinaryForm {
    pub fn from_roots(roots: impl IntoIterator<Item = (P1Point, u32)>) -> Self {
        Self::with_scale(roots, Rational::one()).expect("unit scale")
    }

    pub fn with_scale(roots: impl IntoIterator<Item = (P1Point, u32)>, scale: Rational) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::domain("the zero form is not allowed"));
        }
        let mut factors = BTreeMap::new();
        for (p, m) in roots {
            if m > 0 {
                *factors.entry(p).or_insert(0) += m;
            }
        }
        let degree = factors.values().sum();
        Ok(BinaryForm { degree, factors, scale })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn roots(&self) -> impl Iterator<Item = (&P1Point, u32)> {
        self.factors.iter().map(|(p, &m)| (p, m))
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn pow(&self, k: u32) -> Self {
        let scale = (0..k).fold(Rational::one(), |acc, _| acc * &self.scale);
        Self::with_scale(self.factors.iter().map(|(p, &m)| (p.clone(), m * k)), scale).expect("nonzero")
    }

    /// Expanded polynomial in `x, y`.
    pub fn expand(&self) -> RatPoly {
        let mut out = RatPoly::constant(2, self.scale.clone());
        for (p, &m) in &self.factors {
            let (cx, cy) = p.linear_form();
            let mut linear = RatPoly::zero(2);
            linear.add_term(vec![1, 0], cx);
            linear.add_term(vec![0, 1], cy);
            out = &out * &linear.pow(m);
        }
        out
    }

    pub fn to_vector(&self) -> WeightedVector {
        let rep = RepresentationSpec::symmetric_power_sl2(self.degree);
        WeightedVector::from_poly(rep, &self.expand()).expect("nonzero form")
    }

    /// `σ·f = f ∘ σ⁻¹`, whose roots are `σ` applied to the roots of `f`.
    pub fn transform(&self, sigma: &ExactMatrix) -> Result<Self> {
        let roots = self
            .factors
            .iter()
            .map(|(p, &m)| Ok((p.moved_by(sigma)?, m)))
            .collect::<Result<Vec<_>>>()?;
        let moved = Self::with_scale(roots, Rational::one())?;
        // Fix the scale by comparing one coefficient with the exact action.
        let exact = self.to_vector().group_act(sigma)?.to_poly()?;
        let unit = moved.expand();
        let (m, c) = unit.terms().iter().next().expect("nonzero");
        let target = exact.terms().get(m).ok_or_else(|| Error::Consistency("transformed roots disagree".into()))?;
        Self::with_scale(moved.factors, real(target)? / c)
    }

    /// Factors an expanded form over `Q`.
    pub fn from_poly(poly: &RatPoly) -> Result<Self> {
        if poly.nvars() != 2 || !poly.is_homogeneous() || poly.is_zero() {
            return Err(Error::domain("expected a nonzero homogeneous form in x, y"));
        }
        let degree = poly.degree().unwrap_or(0);
        // Multiplicity of [1:0] is the power of y dividing f.
        let at_infinity = poly.min_degree_in(1);
        let mut coeffs = vec![Rational::zero(); (degree - at_infinity + 1) as usize];
        for (m, c) in poly.terms() {
            coeffs[m[0] as usize] = c.clone();
        }
        // coeffs[i] is the coefficient of x^i y^{d-i}; as a polynomial in x
        // (with y = 1) the leading coefficient is nonzero after removing y-powers.
        let univariate = coeffs;
        let mut roots: Vec<(P1Point, u32)> = Vec::new();
        if at_infinity > 0 {
            roots.push((P1Point::infinity(), at_infinity));
        }
        let lead = univariate.last().cloned().expect("nonempty");
        for (part, multiplicity) in square_free_decomposition(&univariate) {
            for r in rational_roots(&part)? {
                roots.push((P1Point::affine(r), multiplicity));
            }
        }
        let found: u32 = roots.iter().map(|r| r.1).sum();
        if found != degree {
            return Err(Error::RequiresFactoredInput(format!(
                "only {found} of {degree} roots are rational"
            )));
        }
        // x − a·y has x-coefficient 1, and y has x-degree 0; the scale is the
        // leading x-coefficient up to the sign of the −y factors at infinity.
        let sign = if at_infinity % 2 == 1 { -Rational::one() } else { Rational::one() };
        let form = Self::with_scale(roots, lead * sign)?;
        if form.expand() != *poly {
            return Err(Error::Consistency("factorization does not multiply back".into()));
        }
        Ok(form)
    }

    /// Parses `"(x)^2*(x-y)"`, an optional rational scale, or an expanded form.
    pub fn parse(text: &str) -> Result<Self> {
        match parse_factored(text) {
            Ok(form) => Ok(form),
            Err(factored_err) => {
                let poly = RatPoly::parse(text, &["x", "y"]).map_err(|_| factored_err)?;
                Self::from_poly(&poly)
            }
        }
    }

    pub fn to_json(&self) -> BinaryFormJson {
        BinaryFormJson {
            factors: self
                .factors
                .iter()
                .map(|(p, &m)| FactorJson { root: p.clone(), multiplicity: m })
                .collect(),
            scale: (!self.scale.is_one()).then(|| format_rational(&self.scale)),
        }
    }

    pub fn from_json(json: &BinaryFormJson) -> Result<Self> {
        let scale = match &json.scale {
            Some(s) => parse_rational(s)?,
            None => Rational::one(),
        };
        let mut seen = std::collections::BTreeSet::new();
        for f in &json.factors {
            if !seen.insert(f.root.clone()) {
                return Err(Error::parse(format!("root {} listed twice", f.root)));
            }
        }
        Self::with_scale(json.factors.iter().map(|f| (f.root.clone(), f.multiplicity)), scale)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        // The factor at [1:0] is −y but is printed as y.
        let flips = self.factors.get(&P1Point::infinity()).copied().unwrap_or(0);
        let shown = if flips % 2 == 1 { -self.scale.clone() } else { self.scale.clone() };
        if !shown.is_one() || self.factors.is_empty() {
            parts.push(format_rational(&shown));
        }
        for (p, m) in &self.factors {
            let linear = if p.b.is_zero() {
                "y".to_string()
            } else if p.a.is_zero() {
                "x".to_string()
            } else if p.a.is_negative() {
                format!("x+{}*y", format_rational(&-p.a.clone()))
            } else if p.a.is_one() {
                "x-y".to_string()
            } else {
                format!("x-{}*y", format_rational(&p.a))
            };
            parts.push(format!("({linear})^{m}"));
        }
        write!(f, "{}", parts.join("*"))
    }
}

fn parse_factored(text: &str) -> Result<BinaryForm> {
    let text = text.replace('−', "-");
    let bytes: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut factors: Vec<(P1Point, u32)> = Vec::new();
    let mut scale = Rational::one();
    let mut i = 0;
    let read_exponent = |i: &mut usize| -> Result<u32> {
        if *i < bytes.len() && bytes[*i] == '^' {
            *i += 1;
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            let s: String = bytes[start..*i].iter().collect();
            s.parse().map_err(|_| Error::parse("exponent expected after ^"))
        } else {
            Ok(1)
        }
    };
    while i < bytes.len() {
        let start = i;
        let linear: RatPoly;
        if bytes[i] == '(' {
            let mut depth = 0;
            while i < bytes.len() {
                match bytes[i] {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                i += 1;
            }
            if i == bytes.len() {
                return Err(Error::parse("unbalanced parenthesis"));
            }
            let inner: String = bytes[start + 1..i].iter().collect();
            i += 1;
            linear = RatPoly::parse(&inner, &["x", "y"])?;
        } else if bytes[i] == 'x' || bytes[i] == 'y' {
            linear = RatPoly::parse(&bytes[i].to_string(), &["x", "y"])?;
            i += 1;
        } else {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || matches!(bytes[i], '/' | '-' | '+')) {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            let c = parse_rational(&s)?;
            let k = read_exponent(&mut i)?;
            scale *= (0..k).fold(Rational::one(), |acc, _| acc * &c);
            if i < bytes.len() {
                if bytes[i] != '*' {
                    return Err(Error::parse("factors are separated by *"));
                }
                i += 1;
            }
            continue;
        }
        let k = read_exponent(&mut i)?;
        if i < bytes.len() {
            if bytes[i] != '*' {
                return Err(Error::parse("factors are separated by *"));
            }
            i += 1;
        }
        match linear.degree() {
            Some(0) => {
                let c = linear.coeff(&[0, 0]);
                scale *= (0..k).fold(Rational::one(), |acc, _| acc * &c);
            }
            Some(1) if linear.is_homogeneous() => {
                let (alpha, beta) = (linear.coeff(&[1, 0]), linear.coeff(&[0, 1]));
                // αx + βy vanishes at [−β:α].
                let p = P1Point::new(-beta.clone(), alpha.clone())?;
                let (cx, cy) = p.linear_form();
                let unit = if cx.is_zero() { beta / cy } else { alpha / cx };
                scale *= (0..k).fold(Rational::one(), |acc, _| acc * &unit);
                factors.push((p, k));
            }
            _ => return Err(Error::parse("each factor must be a linear form in x, y")),
        }
    }
    BinaryForm::with_scale(factors, scale)
}

// Univariate polynomials over Q, coefficients from low to high degree.

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn divide(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() && !is_zero_poly(&r) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !is_zero_poly(&b) {
        let (_, r) = divide(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().unwrap().clone();
    a.iter().map(|c| c / &lead).collect()
}

/// Yun's algorithm: `p = Π a_i^i` with each `a_i` square-free.
fn square_free_decomposition(p: &[Rational]) -> Vec<(Vec<Rational>, u32)> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let a0 = gcd(&p, &dp);
    let mut b = divide(&p, &a0).0;
    let mut c = divide(&dp, &a0).0;
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let db = derivative(&b);
        let d: Vec<Rational> = trim(
            (0..c.len().max(db.len()))
                .map(|k| c.get(k).cloned().unwrap_or_default() - db.get(k).cloned().unwrap_or_default())
                .collect(),
        );
        let a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divide(&b, &a).0;
        if b.len() <= 1 {
            break;
        }
        c = divide(&d, &a).0;
        i += 1;
    }
    out
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&n| n <= 1_000_000_000_000).ok_or_else(|| {
        Error::RequiresFactoredInput("coefficients too large for rational root search".into())
    })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Rational roots of a square-free polynomial.
fn rational_roots(p: &[Rational]) -> Result<Vec<Rational>> {
    let p = trim(p.to_vec());
    let denom = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(denom.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let mut start = 0;
    while ints[start].is_zero() {
        start += 1;
    }
    if start > 0 {
        roots.push(Rational::zero());
    }
    let (a0, lead) = (&ints[start], ints.last().unwrap());
    if ints.len() - start <= 1 {
        return Ok(roots);
    }
    for num in divisors(a0)? {
        for den in divisors(lead)? {
            for sign in [1, -1] {
                let r = Rational::new(num.clone() * sign, den.clone());
                if roots.contains(&r) {
                    continue;
                }
                let value = p.iter().rev().fold(Rational::zero(), |acc, c| acc * &r + c);
                if value.is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    Ok(roots)
}

/// Multiplicity of `p` as a root of `f`.
pub fn ord_at(f: &BinaryForm, p: &P1Point) -> u32 {
    f.factors.get(p).copied().unwrap_or(0)
}

/// Outcome of the root-multiplicity criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryVerdict {
    pub semistable: bool,
    /// Strict form of the criterion: `e < d` and strict inequality everywhere.
    pub numerically_strict: bool,
    /// A point where the (non-strict, then strict) inequality fails.
    pub witness: Option<P1Point>,
    pub reason: String,
}

impl BinaryVerdict {
    pub fn status(&self) -> Status {
        match (self.semistable, self.numerically_strict) {
            (true, true) => Status::Stable,
            (true, false) => Status::SemistableNotStable,
            _ => Status::Unstable,
        }
    }

    pub fn to_verdict(&self) -> Verdict {
        Verdict { status: self.status(), witness: None, certificate: self.reason.clone() }
    }
}

/// Semistability of `(f, g)` with `f ∈ Sym^e`, `g ∈ Sym^d` by root multiplicities.
pub fn sl2_pair_semistable(f: &BinaryForm, g: &BinaryForm) -> BinaryVerdict {
    let (e, d) = (f.degree as i64, g.degree as i64);
    let gap = d - e;
    // 2(ord_p g − ord_p f) ≤ d − e; only roots of g can make the left side positive.
    let excess = |p: &P1Point| 2 * (ord_at(g, p) as i64 - ord_at(f, p) as i64);
    let worst = g.factors.keys().max_by_key(|p| excess(p)).cloned();
    let worst_excess = worst.as_ref().map_or(i64::MIN, excess);
    if e > d {
        return BinaryVerdict {
            semistable: false,
            numerically_strict: false,
            witness: None,
            reason: format!("deg f = {e} > {d} = deg g"),
        };
    }
    if worst_excess > gap {
        let p = worst.unwrap();
        return BinaryVerdict {
            semistable: false,
            numerically_strict: false,
            reason: format!(
                "at {p}: ord(g) − ord(f) = {} > (d − e)/2 = {}",
                worst_excess / 2,
                Rational::new(gap.into(), 2.into())
            ),
            witness: Some(p),
        };
    }
    let strict = e < d && worst_excess < gap;
    let reason = if strict {
        format!("e = {e} < d = {d} and ord(g) − ord(f) < (d − e)/2 at every root of g")
    } else if e == d {
        format!("e = d = {e}: semistable with equality at every point")
    } else {
        format!("equality ord(g) − ord(f) = (d − e)/2 at {}", worst.as_ref().unwrap())
    };
    BinaryVerdict {
        semistable: true,
        numerically_strict: strict,
        witness: if strict { None } else { worst.filter(|_| e < d) },
        reason,
    }
}

/// Result of comparing the root criterion with conjugated torus tests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub oracle: BinaryVerdict,
    pub torus_semistable: bool,
    pub torus_stable: bool,
    /// `(root, torus status after moving the root to [1:0])`.
    pub per_root: Vec<(P1Point, Status)>,
}

/// Matrix sending `p ↦ [1:0]` and `q ↦ [0:1]`.
pub fn mobius_to_standard(p: &P1Point, q: &P1Point) -> Result<ExactMatrix> {
    let m = ExactMatrix::from_rational_rows(vec![vec![p.a.clone(), q.a.clone()], vec![p.b.clone(), q.b.clone()]])?;
    m.inverse()
}

fn companion_point(used: &[&P1Point]) -> P1Point {
    let mut k = 0i64;
    loop {
        let candidate = match k {
            0 => P1Point::affine(Rational::zero()),
            1 => P1Point::infinity(),
            _ => P1Point::affine(rat(k - 1)),
        };
        if !used.contains(&&candidate) {
            return candidate;
        }
        k += 1;
    }
}

/// Checks the root criterion against the torus machinery.
///
/// For every root `p` of `f·g` a rational matrix moves `p` to `[1:0]` and a
/// non-root to `[0:1]`; the pair is then tested over the diagonal torus.
/// The conjunction over roots must reproduce the oracle, and any mismatch
/// is reported as an error naming the root.
pub fn cross_check(f: &BinaryForm, g: &BinaryForm) -> Result<CrossCheck> {
    let oracle = sl2_pair_semistable(f, g);
    let mut roots: Vec<&P1Point> = f.factors.keys().chain(g.factors.keys()).collect();
    roots.sort();
    roots.dedup();
    let (fv, gv) = (f.to_vector(), g.to_vector());
    let mut per_root = Vec::new();
    let mut semistable = true;
    let mut stable = true;
    let charts: Vec<(Option<P1Point>, ExactMatrix)> = if roots.is_empty() {
        vec![(None, Matrix::identity(2))]
    } else {
        roots
            .iter()
            .map(|&p| Ok((Some(p.clone()), mobius_to_standard(p, &companion_point(&roots))?)))
            .collect::<Result<_>>()?
    };
    for (p, sigma) in charts {
        let pair = Pair::new(fv.group_act(&sigma)?, gv.group_act(&sigma)?)?;
        let semi = pair_semistable_torus(&pair)?;
        let status = if semi.status.is_semistable() { pair_stable_torus(&pair)?.status } else { semi.status };
        semistable &= status.is_semistable();
        stable &= status == Status::Stable;
        if let Some(p) = p {
            per_root.push((p, status));
        }
    }
    if semistable != oracle.semistable || stable != oracle.numerically_strict {
        let culprit = per_root
            .iter()
            .find(|(p, s)| {
                let excess = 2 * (ord_at(g, p) as i64 - ord_at(f, p) as i64);
                let gap = g.degree as i64 - f.degree as i64;
                s.is_semistable() != (excess <= gap && gap >= 0)
            })
            .map_or("none".to_string(), |(p, _)| p.to_string());
        return Err(Error::Consistency(format!(
            "root criterion says {:?} but torus tests say semistable={semistable}, stable={stable} (f = {f}, g = {g}, root {culprit})",
            oracle.status()
        )));
    }
    Ok(CrossCheck { oracle, torus_semistable: semistable, torus_stable: stable, per_root })
}

/// An explicit destabilizing subgroup `σ⁻¹·λ^u·σ` of an unstable pair.
///
/// Tries charts sending a root of `f·g` (then a few fixed points) to `[1:0]`
/// and runs the exact torus search on `(σf, σg)`. Returns `(p, σ, u)`.
pub fn binary_destabilizer(f: &BinaryForm, g: &BinaryForm) -> Result<Option<(P1Point, ExactMatrix, Cocharacter)>> {
    let mut candidates: Vec<P1Point> = g.factors.keys().chain(f.factors.keys()).cloned().collect();
    candidates.extend([P1Point::affine(rat(1)), P1Point::affine(rat(-1)), P1Point::affine(rat(2))]);
    let mut seen = Vec::new();
    let (fv, gv) = (f.to_vector(), g.to_vector());
    for p in candidates {
        if seen.contains(&p) {
            continue;
        }
        seen.push(p.clone());
        let sigma = mobius_to_standard(&p, &companion_point(&[&p]))?;
        let pair = Pair::new(fv.group_act(&sigma)?, gv.group_act(&sigma)?)?;
        if let Some(u) = destabilizer(&pair)? {
            return Ok(Some((p, sigma, u)));
        }
    }
    Ok(None)
}

/// All forms of degree at most `max_degree` with roots in `points`.
pub fn forms_over(points: &[P1Point], max_degree: u32) -> Vec<BinaryForm> {
    fn rec(points: &[P1Point], left: u32, acc: &mut Vec<(P1Point, u32)>, out: &mut Vec<BinaryForm>) {
        match points.split_first() {
            None => out.push(BinaryForm::from_roots(acc.clone())),
            Some((p, rest)) => {
                for m in 0..=left {
                    acc.push((p.clone(), m));
                    rec(rest, left - m, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(points, max_degree, &mut Vec::new(), &mut out);
    out.sort_by_key(|f| f.degree);
    out
}

/// The four points `[0:1], [1:0], [1:1], [−1:1]`.
pub fn standard_points() -> Vec<P1Point> {
    vec![
        P1Point::affine(Rational::zero()),
        P1Point::infinity(),
        P1Point::affine(rat(1)),
        P1Point::affine(rat(-1)),
    ]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExhaustiveReport {
    pub pairs: usize,
    pub agreements: usize,
    pub semistable_pairs: usize,
    pub disagreements: Vec<String>,
}

/// Cross-checks every pair of forms over `points` with degrees at most `max_degree`.
pub fn exhaustive_cross_check(points: &[P1Point], max_degree: u32) -> ExhaustiveReport {
    let forms = forms_over(points, max_degree);
    let pairs: Vec<(&BinaryForm, &BinaryForm)> =
        forms.iter().flat_map(|f| forms.iter().map(move |g| (f, g))).collect();
    let results: Vec<std::result::Result<bool, String>> = pairs
        .par_iter()
        .map(|(f, g)| cross_check(f, g).map(|c| c.oracle.semistable).map_err(|e| e.to_string()))
        .collect();
    let disagreements: Vec<String> = results.iter().filter_map(|r| r.clone().err()).collect();
    ExhaustiveReport {
        pairs: pairs.len(),
        agreements: pairs.len() - disagreements.len(),
        semistable_pairs: results.iter().filter(|r| matches!(r, Ok(true))).count(),
        disagreements,
    }
}

/// A rational matrix of determinant one from small integers.
pub fn sl2_rational(a: i64, b: i64, c: i64) -> Result<ExactMatrix> {
    if a == 0 {
        return Err(Error::domain("top-left entry must be nonzero"));
    }
    // [[a, b], [c, (1 + bc)/a]]
    let d = Rational::new((1 + b * c).into(), a.into());
    ExactMatrix::from_rational_rows(vec![vec![rat(a), rat(b)], vec![rat(c), d]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(text: &str) -> BinaryForm {
        BinaryForm::parse(text).unwrap()
    }

    fn pt(a: i64, b: i64) -> P1Point {
        P1Point::new(rat(a), rat(b)).unwrap()
    }

    #[test]
    fn ord_examples() {
        let f = form("(x)^2*(y)");
        assert_eq!(ord_at(&f, &pt(0, 1)), 2);
        assert_eq!(ord_at(&f, &pt(1, 1)), 0);
        assert_eq!(ord_at(&form("(x-y)^3"), &pt(1, 1)), 3);
    }

    #[test]
    fn criterion_examples() {
        assert!(sl2_pair_semistable(&form("x*y"), &form("(x)^2*(y)^2")).semistable);
        let v = sl2_pair_semistable(&form("x*y"), &form("(x)^3*y"));
        assert!(!v.semistable);
        assert_eq!(v.witness, Some(pt(0, 1)));
        assert!(!sl2_pair_semistable(&form("(x)^2"), &form("y")).semistable);
    }

    #[test]
    fn cross_check_examples() {
        for (f, g) in [("x*y", "(x)^2*(y)^2"), ("x*y", "(x)^3*y"), ("(x-y)^2*(x+y)", "(x-y)^2*(x+y)")] {
            cross_check(&form(f), &form(g)).unwrap();
        }
    }

    #[test]
    fn parses_expanded_forms() {
        let f = form("x^3*y - x*y^3");
        let expected = BinaryForm::from_roots([(pt(0, 1), 1), (pt(1, 0), 1), (pt(1, 1), 1), (pt(-1, 1), 1)]);
        assert_eq!(f.factors, expected.factors);
        assert_eq!(f.expand(), RatPoly::parse("x^3*y - x*y^3", &["x", "y"]).unwrap());
        let g = form("4*x^2 - 4*x*y + y^2");
        assert_eq!(ord_at(&g, &P1Point::affine(Rational::new(1.into(), 2.into()))), 2);
        assert!(matches!(BinaryForm::parse("x^2 + y^2"), Err(Error::RequiresFactoredInput(_))));
        assert_eq!(form("3*(x−2*y)^2").expand(), RatPoly::parse("3*(x - 2*y)^2", &["x", "y"]).unwrap());
    }

    #[test]
    fn transform_moves_roots() {
        let f = form("(x)^2*(x-y)");
        let sigma = sl2_rational(2, 1, 1).unwrap();
        let moved = f.transform(&sigma).unwrap();
        assert_eq!(moved.to_vector(), f.to_vector().group_act(&sigma).unwrap());
        assert_eq!(ord_at(&moved, &pt(0, 1).moved_by(&sigma).unwrap()), 2);
    }

    #[test]
    fn json_round_trip() {
        let f = form("2*(x)^2*(x+y)");
        let json = serde_json::to_string(&f.to_json()).unwrap();
        let back = BinaryForm::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
