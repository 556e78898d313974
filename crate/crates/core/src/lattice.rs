//! Characters, cocharacters and weight polytopes.
//!
//! Everything here is exact. Polytope comparisons are reduced to small
//! feasibility problems solved by [`crate::lp`]: a polytope comparison
//! fails exactly when some homogeneous system in the direction `u` is
//! feasible, and homogeneity lets every strict inequality be written as
//! `>= 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::number::{format_rational, parse_rational, primitive_integer_direction, rat, Rational};

/// Largest coordinate count for which exact direction searches are run.
pub const MAX_RANK: usize = 4;

pub type Point = Vec<Rational>;

/// A character `m ∈ M_Z`, stored by its integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub Vec<i64>);

/// A cocharacter `u ∈ N_Z`, i.e. a one-parameter subgroup `λ^u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cocharacter(pub Vec<i64>);

impl Character {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_point(&self) -> Point {
        self.0.iter().map(|&x| rat(x)).collect()
    }
}

impl Cocharacter {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn to_point(&self) -> Point {
        self.0.iter().map(|&x| rat(x)).collect()
    }

    pub fn negated(&self) -> Cocharacter {
        Cocharacter(self.0.iter().map(|x| -x).collect())
    }

    /// Primitive integral cocharacter on the ray of a rational direction.
    pub fn from_direction(direction: &[Rational]) -> Result<Cocharacter> {
        primitive_integer_direction(direction)
            .into_iter()
            .map(|x| {
                x.to_i64()
                    .ok_or_else(|| Error::Consistency("cocharacter coordinate overflows i64".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Cocharacter)
    }
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn pairing(u: &Cocharacter, m: &Character) -> Result<i64> {
    if u.rank() != m.rank() {
        return Err(Error::Dimension { expected: u.rank(), found: m.rank() });
    }
    Ok(u.0.iter().zip(&m.0).map(|(a, b)| a * b).sum())
}

fn dot(u: &[Rational], x: &[Rational]) -> Rational {
    u.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// The real span the characters live in, and dually the directions tested.
///
/// `TraceZero` is used for maximal tori of `SL(n)` written in `n`
/// coordinates: points are projected onto `Σx = 0` and directions are
/// restricted to `Σu = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ambient {
    Full,
    TraceZero,
}

/// Where the tori of this crate live, and how their characters are encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Torus {
    /// A bare rank-`rank` torus with no enclosing group.
    Free { rank: usize },
    /// Diagonal torus of `SL(2)` in one coordinate; `u` is `diag(t^-u, t^u)`.
    Sl2,
    /// Diagonal torus of `SL(n)`; characters modulo the all-ones vector,
    /// cocharacters of trace zero.
    Sl { n: usize },
}

impl Torus {
    pub fn rank(&self) -> usize {
        match *self {
            Torus::Free { rank } => rank,
            Torus::Sl2 => 1,
            Torus::Sl { n } => n,
        }
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            Torus::Sl { .. } => Ambient::TraceZero,
            _ => Ambient::Full,
        }
    }

    /// Size of the matrices of the enclosing group, if any.
    pub fn group_size(&self) -> Option<usize> {
        match *self {
            Torus::Free { .. } => None,
            Torus::Sl2 => Some(2),
            Torus::Sl { n } => Some(n),
        }
    }

    /// Converts a diagonal-exponent character of `GL(n)` into this torus' encoding.
    pub fn encode_character(&self, diagonal: &[i64]) -> Character {
        match self {
            Torus::Sl2 => Character(vec![diagonal[1] - diagonal[0]]),
            _ => Character(diagonal.to_vec()),
        }
    }

    /// Exponents `e` with `λ^u(t) = diag(t^{e_0}, …, t^{e_{n-1}})`.
    pub fn diagonal_exponents(&self, u: &Cocharacter) -> Result<Vec<i64>> {
        self.check_cocharacter(u)?;
        match self {
            Torus::Sl2 => Ok(vec![-u.0[0], u.0[0]]),
            Torus::Sl { .. } => Ok(u.0.clone()),
            Torus::Free { .. } => Err(Error::NoGroupAction("free torus".into())),
        }
    }

    pub fn check_cocharacter(&self, u: &Cocharacter) -> Result<()> {
        if u.rank() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), found: u.rank() });
        }
        if self.ambient() == Ambient::TraceZero && u.0.iter().sum::<i64>() != 0 {
            return Err(Error::domain(format!("cocharacter {u} of SL(n) must have trace zero")));
        }
        Ok(())
    }

    /// Point of `M_R` representing a character (projected for `SL(n)`).
    pub fn character_point(&self, m: &Character) -> Point {
        project(self.ambient(), &m.to_point())
    }
}

fn project(ambient: Ambient, x: &[Rational]) -> Point {
    match ambient {
        Ambient::Full => x.to_vec(),
        Ambient::TraceZero => {
            let n = rat(x.len() as i64);
            let mean: Rational = x.iter().sum::<Rational>() / n;
            x.iter().map(|c| c - &mean).collect()
        }
    }
}

/// Convex hull of finitely many rational points, kept with its generators.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPolytope {
    ambient: Ambient,
    rank: usize,
    vertices: Vec<Point>,
    generators: Vec<Point>,
}

pub fn convex_hull(points: &[Point]) -> Result<WeightPolytope> {
    convex_hull_in(Ambient::Full, points)
}

/// Hull of `points` inside `ambient`; for `TraceZero` the points are projected first.
pub fn convex_hull_in(ambient: Ambient, points: &[Point]) -> Result<WeightPolytope> {
    let first = points
        .first()
        .ok_or_else(|| Error::domain("convex hull of an empty point set"))?;
    let rank = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != rank) {
        return Err(Error::Dimension { expected: rank, found: bad.len() });
    }
    let generators: Vec<Point> = points.iter().map(|p| project(ambient, p)).collect();
    let mut distinct = generators.clone();
    distinct.sort();
    distinct.dedup();

    let vertices = (0..distinct.len())
        .filter(|&i| {
            let others: Vec<&Point> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p)
                .collect();
            !in_hull(&distinct[i], &others)
        })
        .map(|i| distinct[i].clone())
        .collect();
    Ok(WeightPolytope { ambient, rank, vertices, generators })
}

/// Exact membership `p ∈ conv(points)`.
fn in_hull(p: &[Rational], points: &[&Point]) -> bool {
    if points.is_empty() {
        return false;
    }
    let mut lp = LinearProgram::new(points.len());
    for k in 0..p.len() {
        lp.constrain(
            points.iter().map(|q| q[k].clone()).collect(),
            Relation::Eq,
            p[k].clone(),
        );
    }
    lp.constrain(vec![Rational::one(); points.len()], Relation::Eq, Rational::one());
    lp.solve().is_feasible()
}

impl WeightPolytope {
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        let refs: Vec<&Point> = self.vertices.iter().collect();
        in_hull(&project(self.ambient, p), &refs)
    }

    /// `k·P` for a positive rational `k`.
    pub fn scaled(&self, k: &Rational) -> WeightPolytope {
        let scale = |pts: &[Point]| -> Vec<Point> {
            pts.iter().map(|p| p.iter().map(|x| x * k).collect()).collect()
        };
        WeightPolytope {
            ambient: self.ambient,
            rank: self.rank,
            vertices: scale(&self.vertices),
            generators: scale(&self.generators),
        }
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if n != self.rank {
            return Err(Error::Dimension { expected: self.rank, found: n });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &WeightPolytope) -> Result<()> {
        self.check_rank(other.rank)?;
        if self.ambient != other.ambient {
            return Err(Error::domain("polytopes live in different character spaces"));
        }
        Ok(())
    }
}

/// `min_{x ∈ P} (u, x)`.
pub fn support_min(p: &WeightPolytope, u: &[Rational]) -> Result<Rational> {
    p.check_rank(u.len())?;
    Ok(p.vertices.iter().map(|v| dot(u, v)).min().expect("polytope has a vertex"))
}

/// `max_{x ∈ P} (u, x)`.
pub fn support_max(p: &WeightPolytope, u: &[Rational]) -> Result<Rational> {
    Ok(-support_min(p, &u.iter().map(|x| -x).collect::<Vec<_>>())?)
}

pub fn support_min_cocharacter(p: &WeightPolytope, u: &Cocharacter) -> Result<Rational> {
    support_min(p, &u.to_point())
}

/// A system of linear conditions on a direction `u`, solved for the
/// feasible direction of least `ℓ¹` norm.
pub(crate) struct DirectionSearch {
    ambient: Ambient,
    rank: usize,
    rows: Vec<(Point, Relation, Rational)>,
}

impl DirectionSearch {
    pub(crate) fn new(ambient: Ambient, rank: usize) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::UnsupportedRank(rank));
        }
        Ok(DirectionSearch { ambient, rank, rows: Vec::new() })
    }

    /// Adds `(a, u) rel b`.
    pub(crate) fn require(&mut self, a: Point, relation: Relation, b: Rational) -> &mut Self {
        debug_assert_eq!(a.len(), self.rank);
        self.rows.push((a, relation, b));
        self
    }

    fn solve_with(&self, extra: Option<(usize, bool)>) -> Option<Point> {
        let n = self.rank;
        // Variables: u (free), then s ≥ |u| componentwise.
        let mut lp = LinearProgram::new(2 * n);
        for i in 0..n {
            lp.set_free(i);
        }
        let mut obj = vec![Rational::zero(); 2 * n];
        obj[n..].iter_mut().for_each(|c| *c = Rational::one());
        lp.minimize(obj);
        let widen = |a: &Point| -> Vec<Rational> {
            let mut row = a.clone();
            row.resize(2 * n, Rational::zero());
            row
        };
        for (a, rel, b) in &self.rows {
            lp.constrain(widen(a), *rel, b.clone());
        }
        for i in 0..n {
            let mut plus = vec![Rational::zero(); 2 * n];
            plus[n + i] = Rational::one();
            plus[i] = -Rational::one();
            lp.constrain(plus.clone(), Relation::Ge, Rational::zero());
            plus[i] = Rational::one();
            lp.constrain(plus, Relation::Ge, Rational::zero());
        }
        if self.ambient == Ambient::TraceZero {
            let mut trace = vec![Rational::one(); n];
            trace.resize(2 * n, Rational::zero());
            lp.constrain(trace, Relation::Eq, Rational::zero());
        }
        if let Some((i, positive)) = extra {
            let mut row = vec![Rational::zero(); 2 * n];
            row[i] = Rational::one();
            if positive {
                lp.constrain(row, Relation::Ge, Rational::one());
            } else {
                lp.constrain(row, Relation::Le, -Rational::one());
            }
        }
        match lp.solve() {
            LpOutcome::Optimal { point, .. } => Some(point[..n].to_vec()),
            _ => None,
        }
    }

    /// Any feasible direction (possibly zero).
    pub(crate) fn solve(&self) -> Option<Point> {
        self.solve_with(None)
    }

    /// A feasible nonzero direction, trying `u_i ≥ 1` then `u_i ≤ -1` in coordinate order.
    pub(crate) fn solve_nonzero(&self) -> Option<Point> {
        (0..self.rank)
            .flat_map(|i| [(i, true), (i, false)])
            .find_map(|extra| self.solve_with(Some(extra)))
    }
}

fn difference(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A direction `u` with `support_min(P, u) < support_min(Q, u)`, if `P ⊄ Q`.
pub fn containment_violation(q: &WeightPolytope, p: &WeightPolytope) -> Result<Option<Point>> {
    q.check_compatible(p)?;
    for vertex in &p.vertices {
        let refs: Vec<&Point> = q.vertices.iter().collect();
        if in_hull(vertex, &refs) {
            continue;
        }
        // (u, c - p) ≥ 1 for every vertex c of Q.
        let mut search = DirectionSearch::new(q.ambient, q.rank)?;
        for c in &q.vertices {
            search.require(difference(c, vertex), Relation::Ge, Rational::one());
        }
        let u = search
            .solve()
            .ok_or_else(|| Error::Consistency("vertex outside hull but no separating direction".into()))?;
        return Ok(Some(u));
    }
    Ok(None)
}

/// Whether `Q ⊇ P`.
pub fn contains(q: &WeightPolytope, p: &WeightPolytope) -> Result<bool> {
    q.check_compatible(p)?;
    let refs: Vec<&Point> = q.vertices.iter().collect();
    Ok(p.vertices.iter().all(|v| in_hull(v, &refs)))
}

/// A nonzero direction `u` with `support_min(Q, u) ≥ support_min(P, u)`, if one exists.
pub fn strict_dominance_violation(q: &WeightPolytope, p: &WeightPolytope) -> Result<Option<Point>> {
    q.check_compatible(p)?;
    if q.rank > MAX_RANK {
        return Err(Error::UnsupportedRank(q.rank));
    }
    for vertex in &p.vertices {
        let mut search = DirectionSearch::new(q.ambient, q.rank)?;
        for c in &q.vertices {
            search.require(difference(c, vertex), Relation::Ge, Rational::zero());
        }
        if let Some(u) = search.solve_nonzero() {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Whether `support_min(Q, u) < support_min(P, u)` for every nonzero direction `u`.
pub fn strictly_dominates(q: &WeightPolytope, p: &WeightPolytope) -> Result<bool> {
    Ok(strict_dominance_violation(q, p)?.is_none())
}

/// Smallest positive integer `k` with `P ⊆ k·S`; `S` must contain the origin.
pub fn min_scale_containment(p: &WeightPolytope, s: &WeightPolytope) -> Result<u64> {
    s.check_compatible(p)?;
    let origin = vec![Rational::zero(); s.rank];
    if !s.contains_point(&origin) {
        return Err(Error::domain("reference polytope must contain the origin"));
    }
    let mut k = BigInt::one();
    for vertex in &p.vertices {
        // Gauge of the vertex: min Σμ with Σ μ_i s_i = vertex, μ ≥ 0.
        let m = s.vertices.len();
        let mut lp = LinearProgram::new(m);
        lp.minimize(vec![Rational::one(); m]);
        for c in 0..s.rank {
            lp.constrain(s.vertices.iter().map(|x| x[c].clone()).collect(), Relation::Eq, vertex[c].clone());
        }
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => {
                let ceil = value.ceil().to_integer();
                k = k.max(ceil);
            }
            _ => return Err(Error::NoFiniteScale),
        }
    }
    k.to_u64().ok_or(Error::NoFiniteScale)
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    ambient: Ambient,
    vertices: Vec<Vec<String>>,
    generators: Vec<Vec<String>>,
}

fn points_to_strings(points: &[Point]) -> Vec<Vec<String>> {
    points.iter().map(|p| p.iter().map(format_rational).collect()).collect()
}

impl Serialize for WeightPolytope {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson {
            ambient: self.ambient,
            vertices: points_to_strings(&self.vertices),
            generators: points_to_strings(&self.generators),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolytopeJson::deserialize(deserializer)?;
        let generators = raw
            .generators
            .iter()
            .map(|p| p.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        convex_hull_in(raw.ambient, &generators).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::ratio;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn hull(v: &[&[i64]]) -> WeightPolytope {
        convex_hull(&pts(v)).unwrap()
    }

    fn sorted(mut v: Vec<Point>) -> Vec<Point> {
        v.sort();
        v
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&Cocharacter(vec![1]), &Character(vec![3])).unwrap(), 3);
        assert_eq!(pairing(&Cocharacter(vec![0, 0]), &Character(vec![5, -7])).unwrap(), 0);
        assert_eq!(pairing(&Cocharacter(vec![2, -1, -1]), &Character(vec![1, 1, 0])).unwrap(), 1);
        assert!(matches!(
            pairing(&Cocharacter(vec![1]), &Character(vec![1, 2])),
            Err(Error::Dimension { .. })
        ));
    }

    /// Independent extreme-point oracle: a point is a vertex iff some
    /// integer direction in a small box has it as the unique minimizer.
    fn brute_force_vertices(points: &[Point]) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        let dirs: Vec<[i64; 2]> = (-6..=6).flat_map(|a| (-6..=6).map(move |b| [a, b])).collect();
        for d in dirs {
            let du = [rat(d[0]), rat(d[1])];
            let vals: Vec<Rational> = points.iter().map(|p| dot(&du, p)).collect();
            let m = vals.iter().min().unwrap();
            let argmins: Vec<&Point> = points.iter().zip(&vals).filter(|(_, v)| *v == m).map(|(p, _)| p).collect();
            let mut uniq = argmins.clone();
            uniq.sort();
            uniq.dedup();
            if uniq.len() == 1 && !out.contains(uniq[0]) {
                out.push(uniq[0].clone());
            }
        }
        sorted(out)
    }

    #[test]
    fn convex_hull_examples() {
        assert_eq!(hull(&[&[-1], &[0], &[1]]).vertices(), &pts(&[&[-1], &[1]])[..]);
        assert_eq!(hull(&[&[0, 0]]).vertices(), &pts(&[&[0, 0]])[..]);
        let square = pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1]]);
        let expected = brute_force_vertices(&square);
        assert_eq!(expected, sorted(pts(&[&[0, 0], &[2, 0], &[0, 2]])));
        assert_eq!(sorted(convex_hull(&square).unwrap().vertices().to_vec()), expected);
        assert!(convex_hull(&[]).is_err());
    }

    #[test]
    fn support_examples() {
        let seg = hull(&[&[-1], &[1]]);
        assert_eq!(support_min(&seg, &[rat(1)]).unwrap(), rat(-1));
        let tri = hull(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(support_min(&tri, &[rat(1), rat(1)]).unwrap(), rat(0));
        // Oracle: enumerate pairings over the generators.
        let gens = pts(&[&[-2, 1], &[3, -1], &[0, 0]]);
        let u = [rat(1), rat(2)];
        let oracle = gens.iter().map(|g| dot(&u, g)).min().unwrap();
        assert_eq!(oracle, rat(0));
        assert_eq!(support_min(&convex_hull(&gens).unwrap(), &u).unwrap(), oracle);
    }

    #[test]
    fn containment_examples() {
        let big = hull(&[&[-2], &[2]]);
        let small = hull(&[&[-1], &[1]]);
        assert!(contains(&big, &small).unwrap());
        assert!(!contains(&small, &big).unwrap());
        let tri = hull(&[&[0, 0], &[2, 0], &[0, 2]]);
        let edge = hull(&[&[1, 0], &[0, 1]]);
        assert!(contains(&tri, &edge).unwrap());
        let u = containment_violation(&small, &big).unwrap().unwrap();
        assert!(support_min(&big, &u).unwrap() < support_min(&small, &u).unwrap());
    }

    #[test]
    fn strict_dominance_examples() {
        let q = hull(&[&[-2], &[2]]);
        assert!(strictly_dominates(&q, &hull(&[&[0]])).unwrap());
        assert!(!strictly_dominates(&q, &hull(&[&[-2], &[0]])).unwrap());
        let diamond2 = hull(&[&[2, 0], &[-2, 0], &[0, 2], &[0, -2]]);
        let diamond1 = hull(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert!(strictly_dominates(&diamond2, &diamond1).unwrap());
        assert!(!strictly_dominates(&diamond1, &diamond2).unwrap());
        // Lower-dimensional Q: orthogonal directions tie.
        let flat = hull(&[&[-1, 0], &[1, 0]]);
        assert!(!strictly_dominates(&flat, &hull(&[&[0, 0]])).unwrap());
        let five = convex_hull(&[vec![rat(0); 5]]).unwrap();
        assert!(matches!(strictly_dominates(&five, &five), Err(Error::UnsupportedRank(5))));
    }

    #[test]
    fn min_scale_examples() {
        let s = hull(&[&[-1], &[1]]);
        assert_eq!(min_scale_containment(&hull(&[&[3]]), &s).unwrap(), 3);
        assert_eq!(min_scale_containment(&s, &s).unwrap(), 1);
        assert_eq!(min_scale_containment(&hull(&[&[-4], &[4]]), &s).unwrap(), 4);
        let half = convex_hull(&[vec![ratio(5, 2)]]).unwrap();
        assert_eq!(min_scale_containment(&half, &s).unwrap(), 3);
        let ray = hull(&[&[0], &[1]]);
        assert!(matches!(min_scale_containment(&hull(&[&[-1]]), &ray), Err(Error::NoFiniteScale)));
        assert!(min_scale_containment(&s, &hull(&[&[1], &[2]])).is_err());
    }

    #[test]
    fn trace_zero_simplex_contains_origin() {
        let simplex = convex_hull_in(Ambient::TraceZero, &pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert!(simplex.contains_point(&[rat(0), rat(0), rat(0)]));
        assert_eq!(simplex.vertices().len(), 3);
        let twice = simplex.scaled(&rat(2));
        assert_eq!(min_scale_containment(&twice, &simplex).unwrap(), 2);
        // (1,1,1) is a zero direction in this space; strict tests ignore it.
        assert!(strictly_dominates(&twice, &convex_hull_in(Ambient::TraceZero, &pts(&[&[0, 0, 0]])).unwrap()).unwrap());
    }

    #[test]
    fn polytope_json_keeps_exact_values() {
        let p = convex_hull(&[vec![ratio(-3, 2), rat(1)], vec![rat(2), ratio(1, 3)]]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.contains("\"-3/2\""));
        let back: WeightPolytope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
