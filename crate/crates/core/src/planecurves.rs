//! Plane curves: Chow forms, dual curves, P-coordinates and Futaki invariants.
//!
//! A curve `C = {F = 0} ⊂ P²` gives two polynomials acted on by `SL(3)`:
//! the Chow form `R_M(r, s) = F(r × s)` on `2×3` matrices, and the dual
//! curve `Δ_M(u, v, w)` cutting out its tangent lines. Both are functions
//! of covectors, so `σ` acts by `P(ℓ) ↦ P(ℓσ)`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Cocharacter, Torus};
use crate::matrix::nullspace;
use crate::number::{parse_rational, rat, Rational};
use crate::poly::{has_no_projective_zero, resultant, Monomial, Poly, RatPoly};
use crate::rep::{RepresentationSpec, RowKind, WeightedVector};

pub const CURVE_VARS: [&str; 3] = ["x", "y", "z"];
pub const DUAL_VARS: [&str; 3] = ["u", "v", "w"];
pub const CHOW_VARS: [&str; 6] = ["r0", "r1", "r2", "s0", "s1", "s2"];

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    form: RatPoly,
    degree: u32,
    smooth: bool,
}

impl PlaneCurve {
    pub fn new(form: RatPoly) -> Result<Self> {
        if form.nvars() != 3 || form.is_zero() || !form.is_homogeneous() {
            return Err(Error::domain("a plane curve needs a nonzero homogeneous form in x, y, z"));
        }
        let degree = form.degree().unwrap_or(0);
        if degree == 0 {
            return Err(Error::domain("a plane curve has degree at least 1"));
        }
        let partials: Vec<RatPoly> = (0..3).map(|i| form.derivative(i)).collect();
        let smooth = has_no_projective_zero(&partials, 3);
        Ok(PlaneCurve { form, degree, smooth })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(RatPoly::parse(text, &CURVE_VARS)?)
    }

    /// `{"x*z": "1", "y^2": "-1"}`.
    pub fn from_monomial_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut p = RatPoly::zero(3);
        for (m, c) in map {
            let mono = crate::poly::parse_monomial(m, &CURVE_VARS)?;
            p.add_term(mono, parse_rational(c)?);
        }
        Self::new(p)
    }

    pub fn form(&self) -> &RatPoly {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    fn require_smooth(&self) -> Result<()> {
        if !self.smooth {
            return Err(Error::domain("the curve is singular"));
        }
        Ok(())
    }

    pub fn gradient_at(&self, p: &[Rational]) -> Vec<Rational> {
        (0..3).map(|i| self.form.derivative(i).eval(p)).collect()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.form.eval(p).is_zero()
    }
}

/// `R_M(r, s) = F(r × s)` in the variables `r0 r1 r2 s0 s1 s2`.
pub fn chow_form(c: &PlaneCurve) -> RatPoly {
    let var = |i| Poly::var(6, i);
    let cross = |a: usize, b: usize| &(&var(a) * &var(3 + b)) - &(&var(b) * &var(3 + a));
    let images = [cross(1, 2), cross(2, 0), cross(0, 1)];
    c.form.substitute(&images)
}

/// `μ = (2 − 2g)/d = 3 − d` for a smooth plane curve.
pub fn mu(c: &PlaneCurve) -> Result<Rational> {
    c.require_smooth()?;
    Ok(rat(3 - c.degree as i64))
}

/// `d̄ = d(d − 1)`, the degree of the dual curve.
pub fn dual_degree(c: &PlaneCurve) -> u32 {
    c.degree * (c.degree - 1)
}

/// The dual curve `Δ_M(u, v, w)`, normalized to grlex-leading coefficient 1.
///
/// On the line `ux + vy + wz = 0` put `z = −(ux + vy)/w`; the line is
/// tangent iff `G(x, y) = w^d F(x, y, z)` has a repeated root, i.e.
/// `Res(∂G/∂x, ∂G/∂y) = 0`. That resultant is `w^{d(d−1)} Δ_M`.
pub fn hyperdiscriminant(c: &PlaneCurve) -> Result<RatPoly> {
    c.require_smooth()?;
    let d = c.degree;
    if d < 2 {
        return Err(Error::domain("dual curves need degree at least 2"));
    }
    // Variables x, y, u, v, w.
    let var = |i| Poly::var(5, i);
    let minus_line = -&(&(&var(2) * &var(0)) + &(&var(3) * &var(1)));
    let mut g = Poly::zero(5);
    for (m, coeff) in c.form.terms() {
        let mut term = Poly::constant(5, coeff.clone());
        term = &term * &var(0).pow(m[0]);
        term = &term * &var(1).pow(m[1]);
        term = &term * &minus_line.pow(m[2]);
        term = &term * &var(4).pow(d - m[2]);
        g = &g + &term;
    }
    let binary_coefficients = |p: &Poly<Rational>, deg: u32| -> Vec<RatPoly> {
        let mut out = vec![Poly::zero(3); deg as usize + 1];
        for (m, coeff) in p.terms() {
            // Highest power of x first.
            let slot = (deg - m[0]) as usize;
            out[slot].add_term(vec![m[2], m[3], m[4]], coeff.clone());
        }
        out
    };
    let gx = binary_coefficients(&g.derivative(0), d - 1);
    let gy = binary_coefficients(&g.derivative(1), d - 1);
    let res = resultant(&gx, &gy, 3);
    if res.is_zero() {
        return Err(Error::Consistency("tangency resultant vanished identically".into()));
    }
    let strip = res.min_degree_in(2);
    let delta = res
        .divide_by_var_power(2, strip)
        .ok_or_else(|| Error::Consistency("w-power division failed".into()))?;
    let expected = dual_degree(c);
    if delta.degree() != Some(expected) || !delta.is_homogeneous() {
        return Err(Error::Consistency(format!(
            "dual curve has degree {:?}, expected {expected}",
            delta.degree()
        )));
    }
    Ok(delta.normalized())
}

/// Symmetric matrix `A` of a conic `F = xᵀAx`.
pub fn conic_matrix(c: &PlaneCurve) -> Result<[[Rational; 3]; 3]> {
    if c.degree != 2 {
        return Err(Error::domain("not a conic"));
    }
    let mut a: [[Rational; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut m = vec![0u32; 3];
            m[i] += 1;
            m[j] += 1;
            let coeff = c.form.coeff(&m);
            a[i][j] = if i == j { coeff } else { coeff / rat(2) };
        }
    }
    Ok(a)
}

/// `ℓᵀ adj(A) ℓ`, the dual of a smooth conic, normalized.
pub fn adjugate_dual_conic(c: &PlaneCurve) -> Result<RatPoly> {
    let a = conic_matrix(c)?;
    let cof = |i: usize, j: usize| {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let det = &a[rows[0]][cols[0]] * &a[rows[1]][cols[1]] - &a[rows[0]][cols[1]] * &a[rows[1]][cols[0]];
        if (i + j) % 2 == 0 {
            det
        } else {
            -det
        }
    };
    let mut p = RatPoly::zero(3);
    for i in 0..3 {
        for j in 0..3 {
            // adj(A)_{ij} = cofactor_{ji}
            let mut m = vec![0u32; 3];
            m[i] += 1;
            m[j] += 1;
            p.add_term(m, cof(j, i));
        }
    }
    Ok(p.normalized())
}

fn covector_space(rows: usize, degree: u32) -> std::sync::Arc<RepresentationSpec> {
    let names: Vec<String> = if rows == 1 {
        DUAL_VARS.iter().map(|s| s.to_string()).collect()
    } else {
        CHOW_VARS.iter().map(|s| s.to_string()).collect()
    };
    RepresentationSpec::polynomial_space_named(3, vec![RowKind::Covector; rows], names, degree)
        .expect("names match the layout")
}

/// `R_M` as a vector of the degree-`2d` polynomials on `2×3` matrices.
pub fn chow_vector(c: &PlaneCurve) -> Result<WeightedVector> {
    WeightedVector::from_poly(covector_space(2, 2 * c.degree), &chow_form(c).normalized())
}

/// `Δ_M` as a vector of the degree-`d̄` polynomials in dual coordinates.
pub fn dual_vector(c: &PlaneCurve) -> Result<WeightedVector> {
    WeightedVector::from_poly(covector_space(1, dual_degree(c)), &hyperdiscriminant(c)?)
}

/// The P-coordinates `(R(M), Δ(M)) = (R_M^{d̄}, Δ_M^{2d})`, kept as lazy powers.
#[derive(Debug, Clone)]
pub struct PCoordinates {
    pub chow: WeightedVector,
    pub dual: WeightedVector,
    pub chow_exponent: u32,
    pub dual_exponent: u32,
    /// Common degree `r = 2d·d̄` of both spaces, which is also `deg(V)`.
    pub r: u32,
}

pub fn p_coordinates(c: &PlaneCurve) -> Result<PCoordinates> {
    let dbar = dual_degree(c);
    let two_d = 2 * c.degree;
    let chow = WeightedVector::polynomial_power(chow_vector(c)?, dbar)?;
    let dual = WeightedVector::polynomial_power(dual_vector(c)?, two_d)?;
    Ok(PCoordinates { chow, dual, chow_exponent: dbar, dual_exponent: two_d, r: two_d * dbar })
}

fn check_lambda(u: &Cocharacter) -> Result<()> {
    Torus::Sl { n: 3 }.check_cocharacter(u)
}

/// `w_λ(Δ(M)) − w_λ(R(M))`.
pub fn futaki(c: &PlaneCurve, u: &Cocharacter) -> Result<i64> {
    check_lambda(u)?;
    let p = p_coordinates(c)?;
    Ok(p.dual.weight(u)? - p.chow.weight(u)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlongVerdict {
    Passes,
    AntecedentVacuous,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlongReport {
    pub verdict: AlongVerdict,
    pub lambda: Vec<i64>,
    /// `r·w_λ(I)`.
    pub reference_weight: i64,
    pub chow_weight: i64,
    pub dual_weight: i64,
    pub futaki: i64,
}

/// The K-stability implication at one `λ`, with `v = R(M)`, `w = Δ(M)`, `deg(V) = r`:
/// if `r·w_λ(I) < w_λ(R(M))` then `w_λ(Δ(M)) < w_λ(R(M))`.
pub fn k_stability_along(c: &PlaneCurve, u: &Cocharacter) -> Result<AlongReport> {
    check_lambda(u)?;
    let p = p_coordinates(c)?;
    let chow_weight = p.chow.weight(u)?;
    let dual_weight = p.dual.weight(u)?;
    let reference_weight = p.r as i64 * u.0.iter().copied().min().unwrap_or(0);
    Ok(along_from_weights(u, reference_weight, chow_weight, dual_weight))
}

pub fn along_from_weights(u: &Cocharacter, reference_weight: i64, chow_weight: i64, dual_weight: i64) -> AlongReport {
    let verdict = if reference_weight >= chow_weight {
        AlongVerdict::AntecedentVacuous
    } else if dual_weight < chow_weight {
        AlongVerdict::Passes
    } else {
        AlongVerdict::Fails
    };
    AlongReport {
        verdict,
        lambda: u.0.clone(),
        reference_weight,
        chow_weight,
        dual_weight,
        futaki: dual_weight - chow_weight,
    }
}

/// `min` over monomials of an explicit polynomial of `Σ_j u_j·(column sums)_j`.
pub fn brute_force_weight(p: &RatPoly, rows: usize, u: &Cocharacter) -> i64 {
    p.terms()
        .keys()
        .map(|m: &Monomial| {
            (0..rows)
                .flat_map(|r| (0..3).map(move |j| (r, j)))
                .map(|(r, j)| m[r * 3 + j] as i64 * u.0[j])
                .sum::<i64>()
        })
        .min()
        .expect("nonzero polynomial")
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    loop {
        let p: Vec<Rational> = (0..3).map(|_| rat(rng.random_range(-5..=5))).collect();
        if p.iter().any(|x| !x.is_zero()) {
            return p;
        }
    }
}

fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push(vec![a, b, d - a - b]);
        }
    }
    out
}

fn proportional_points(p: &[Rational], q: &[Rational]) -> bool {
    let cross = [
        &p[1] * &q[2] - &p[2] * &q[1],
        &p[2] * &q[0] - &p[0] * &q[2],
        &p[0] * &q[1] - &p[1] * &q[0],
    ];
    cross.iter().all(|x| x.is_zero())
}

fn normalize_point(p: &[Rational]) -> Vec<Rational> {
    let lead = p.iter().find(|x| !x.is_zero()).expect("nonzero point").clone();
    p.iter().map(|x| x / &lead).collect()
}

/// A random smooth curve of degree `d ∈ {2, 3}` with at least `points`
/// known rational points, and those points.
///
/// The curve is the one through `d(d+3)/2` random integer points; more
/// points come from residual intersections with lines through known points.
pub fn random_curve_with_points(d: u32, points: usize, seed: u64) -> Result<(PlaneCurve, Vec<Vec<Rational>>)> {
    if !(2..=3).contains(&d) {
        return Err(Error::domain("random curves with rational points are built for d = 2, 3"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monos = monomials_of_degree(d);
    let needed = monos.len() - 1;
    for _attempt in 0..1000 {
        let mut pts: Vec<Vec<Rational>> = Vec::new();
        while pts.len() < needed {
            let p = random_point(&mut rng);
            if !pts.iter().any(|q| proportional_points(q, &p)) {
                pts.push(p);
            }
        }
        let rows: Vec<Vec<Rational>> = pts
            .iter()
            .map(|p| monos.iter().map(|m| Poly::monomial(m.clone(), Rational::one()).eval(p)).collect())
            .collect();
        let kernel = nullspace(&rows, monos.len());
        if kernel.len() != 1 {
            continue;
        }
        let form = RatPoly::from_terms(3, monos.iter().cloned().zip(kernel[0].iter().cloned()));
        let Ok(curve) = PlaneCurve::new(form) else { continue };
        if !curve.is_smooth() || curve.degree != d {
            continue;
        }
        let mut known: Vec<Vec<Rational>> = pts.iter().map(|p| normalize_point(p)).collect();
        let mut guard = 0;
        while known.len() < points && guard < 200 {
            guard += 1;
            let p = known[rng.random_range(0..known.len())].clone();
            let q = if d == 2 {
                random_point(&mut rng)
            } else {
                known[rng.random_range(0..known.len())].clone()
            };
            if proportional_points(&p, &q) {
                continue;
            }
            if let Some(new) = residual_point(&curve, &p, &q)? {
                if !known.iter().any(|k| proportional_points(k, &new)) {
                    known.push(normalize_point(&new));
                }
            }
        }
        if known.len() >= points {
            return Ok((curve, known));
        }
    }
    Err(Error::Consistency("could not build a smooth curve with enough rational points".into()))
}

/// Restricts `F` to the line through `p` (on the curve) and `q`, removes the
/// known roots and returns the remaining intersection if it is rational.
fn residual_point(c: &PlaneCurve, p: &[Rational], q: &[Rational]) -> Result<Option<Vec<Rational>>> {
    // F(s·p + t·q) as a binary form in (s, t).
    let s = Poly::var(2, 0);
    let t = Poly::var(2, 1);
    let images: Vec<RatPoly> = (0..3)
        .map(|i| &s.scale(&p[i]) + &t.scale(&q[i]))
        .collect();
    let restricted = c.form.substitute(&images);
    if restricted.is_zero() {
        return Ok(None);
    }
    let d = c.degree;
    let mut coeffs = vec![Rational::zero(); d as usize + 1];
    for (m, coeff) in restricted.terms() {
        coeffs[m[1] as usize] = coeff.clone();
    }
    // coeffs[k] multiplies s^{d-k} t^k. The root t = 0 (the point p) is removed;
    // if q is also on the curve the root s = 0 goes too.
    let on_q = c.contains(q);
    let low = 1;
    let high = if on_q { d as usize - 1 } else { d as usize };
    if high < low || high - low != 1 {
        return Ok(None);
    }
    // Remaining linear factor a·s + b·t from coeffs[low] s^{..} t^{low} + coeffs[high] ...
    let (a, b) = (coeffs[low].clone(), coeffs[high].clone());
    if coeffs.iter().enumerate().any(|(k, x)| k != low && k != high && !x.is_zero()) {
        return Ok(None);
    }
    if a.is_zero() && b.is_zero() {
        return Ok(None);
    }
    // a·s^{d-1}t + b·s^{d-2}t² (cubic through p, q) or a·s t + b·t² (conic):
    // residual root is [s:t] = [−b : a] up to the removed factors.
    let (s0, t0) = (-b, a);
    let point: Vec<Rational> = (0..3).map(|i| &s0 * &p[i] + &t0 * &q[i]).collect();
    if point.iter().all(|x| x.is_zero()) || !c.contains(&point) {
        return Ok(None);
    }
    Ok(Some(point))
}

/// The tangent line `∇F(p)` at a smooth point.
pub fn tangent_line(c: &PlaneCurve, p: &[Rational]) -> Vec<Rational> {
    c.gradient_at(p)
}

/// Whether every tangent line at the given points lies on the dual curve.
pub fn incidence_holds(c: &PlaneCurve, delta: &RatPoly, points: &[Vec<Rational>]) -> bool {
    points.iter().all(|p| c.contains(p) && delta.eval(&tangent_line(c, p)).is_zero())
}

/// Positive-leading rendering helper for exact outputs.
pub fn monomial_map(p: &RatPoly, names: &[&str]) -> BTreeMap<String, String> {
    let p = if p.leading(crate::poly::grlex).is_some_and(|(_, c)| c.is_negative()) { -p } else { p.clone() };
    p.to_monomial_map(names)
}
