//! Stability of pairs `(v, w)` through weights of one-parameter subgroups.
//!
//! Over a fixed maximal torus everything reduces to comparing weight
//! polytopes, and all comparisons here are exact linear programs. Over the
//! whole group only a sampled search is offered: random rational changes of
//! basis followed by the exact torus test.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    containment_violation, pairing, strict_dominance_violation, support_min_cocharacter, Cocharacter, DirectionSearch,
    Point, Torus, WeightPolytope, MAX_RANK,
};
use crate::lp::Relation;
use crate::matrix::{ExactMatrix, Matrix};
use crate::number::{format_gaussian, rat, Gaussian, Rational};
use crate::rep::WeightedVector;

/// A pair of nonzero vectors in representations of the same torus.
#[derive(Debug, Clone, PartialEq)]
pub struct Pair {
    pub v: WeightedVector,
    pub w: WeightedVector,
}

impl Pair {
    pub fn new(v: WeightedVector, w: WeightedVector) -> Result<Self> {
        if v.torus() != w.torus() {
            return Err(Error::domain(format!(
                "pair mixes tori {:?} and {:?}",
                v.torus(),
                w.torus()
            )));
        }
        Ok(Pair { v, w })
    }

    pub fn torus(&self) -> Torus {
        self.v.torus()
    }

    fn polytopes(&self) -> Result<(WeightPolytope, WeightPolytope)> {
        let rank = self.torus().rank();
        if rank > MAX_RANK {
            return Err(Error::UnsupportedRank(rank));
        }
        Ok((self.v.weight_polytope()?, self.w.weight_polytope()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Stable,
    SemistableNotStable,
    Unstable,
    UnknownSampled,
}

impl Status {
    pub fn is_semistable(self) -> bool {
        matches!(self, Status::Stable | Status::SemistableNotStable)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Vec<i64>>,
    pub certificate: String,
}

impl Verdict {
    fn new(status: Status, witness: Option<&Cocharacter>, certificate: String) -> Self {
        Verdict { status, witness: witness.map(|u| u.0.clone()), certificate }
    }

    pub fn witness_cocharacter(&self) -> Option<Cocharacter> {
        self.witness.clone().map(Cocharacter)
    }
}

/// `w_λ(v) = min_{a ∈ A(v)} (a, u)`.
pub fn weight(u: &Cocharacter, v: &WeightedVector) -> Result<i64> {
    v.weight(u)
}

/// The exponent `k` and limit `v₀ = lim α^{-k} λ(α)v`, checked against [`weight`].
pub fn verify_weight_by_limit(u: &Cocharacter, v: &WeightedVector) -> Result<(i64, WeightedVector)> {
    let k = v.weight(u)?;
    let limit = v.lowest_weight_part(u)?;
    for a in limit.support()? {
        if pairing(u, &a)? != k {
            return Err(Error::Consistency(format!("limit keeps weight {a:?} off the minimum {k}")));
        }
    }
    if let Ok(support) = v.support() {
        let min = support.iter().map(|a| pairing(u, a)).collect::<Result<Vec<_>>>()?.into_iter().min();
        if min != Some(k) {
            return Err(Error::Consistency(format!("support minimum {min:?} differs from weight {k}")));
        }
    }
    Ok((k, limit))
}

fn primitive(u: &Point) -> Result<Cocharacter> {
    Cocharacter::from_direction(u)
}

fn check_witness(u: &Cocharacter, p: &Pair) -> Result<()> {
    let (wv, ww) = (p.v.weight(u)?, p.w.weight(u)?);
    if ww <= wv {
        return Err(Error::Consistency(format!("witness {u} gives w_λ(w) = {ww} ≤ {wv} = w_λ(v)")));
    }
    Ok(())
}

/// `N(v) ⊄ N(w)` witness from explicit polytopes.
pub fn destabilizing_direction(nv: &WeightPolytope, nw: &WeightPolytope) -> Result<Option<Cocharacter>> {
    containment_violation(nw, nv)?.map(|u| primitive(&u)).transpose()
}

/// An integral `λ` with `w_λ(w) > w_λ(v)`, if the pair is torus-unstable.
///
/// The first vertex of `N(v)` outside `N(w)` is separated by the direction of
/// least `ℓ¹` norm, then scaled to a primitive integral vector.
pub fn destabilizer(p: &Pair) -> Result<Option<Cocharacter>> {
    let (nv, nw) = p.polytopes()?;
    let u = destabilizing_direction(&nv, &nw)?;
    if let Some(u) = &u {
        check_witness(u, p)?;
    }
    Ok(u)
}

fn describe(p: &WeightPolytope) -> String {
    let mut s = String::from("{");
    for (i, v) in p.vertices().iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push('(');
        for (j, x) in v.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            let _ = write!(s, "{x}");
        }
        s.push(')');
    }
    s.push('}');
    s
}

/// Torus semistability from polytopes: `N(v) ⊆ N(w)`.
pub fn semistable_polytopes(nv: &WeightPolytope, nw: &WeightPolytope) -> Result<Verdict> {
    match destabilizing_direction(nv, nw)? {
        Some(u) => {
            let (mv, mw) = (support_min_cocharacter(nv, &u)?, support_min_cocharacter(nw, &u)?);
            Ok(Verdict::new(
                Status::Unstable,
                Some(&u),
                format!("u = {u} separates a vertex of N(v) from N(w): min over N(w) is {mw} > {mv}"),
            ))
        }
        None => Ok(Verdict::new(
            Status::SemistableNotStable,
            None,
            format!(
                "every vertex of N(v) = {} lies in N(w) = {}",
                describe(nv),
                describe(nw)
            ),
        )),
    }
}

/// Torus stability from polytopes: strict dominance in every nonzero direction.
pub fn stable_polytopes(nv: &WeightPolytope, nw: &WeightPolytope) -> Result<Verdict> {
    let semi = semistable_polytopes(nv, nw)?;
    if semi.status == Status::Unstable {
        return Ok(semi);
    }
    match strict_dominance_violation(nw, nv)? {
        Some(u) => {
            let u = primitive(&u)?;
            Ok(Verdict::new(
                Status::SemistableNotStable,
                Some(&u),
                format!(
                    "{}; u = {u} attains equality: min over N(w) = min over N(v) = {}",
                    semi.certificate,
                    support_min_cocharacter(nv, &u)?
                ),
            ))
        }
        None => Ok(Verdict::new(
            Status::Stable,
            None,
            format!(
                "{}; no nonzero direction attains min over N(w) ≥ min over N(v) at any vertex",
                semi.certificate
            ),
        )),
    }
}

/// `N(v) ⊆ N(w)`, i.e. `w_λ(w) ≤ w_λ(v)` for every cocharacter of the torus.
pub fn pair_semistable_torus(p: &Pair) -> Result<Verdict> {
    let (nv, nw) = p.polytopes()?;
    let verdict = semistable_polytopes(&nv, &nw)?;
    if let Some(u) = verdict.witness_cocharacter() {
        check_witness(&u, p)?;
    }
    Ok(verdict)
}

/// `w_λ(w) < w_λ(v)` for every nontrivial cocharacter of the torus.
pub fn pair_stable_torus(p: &Pair) -> Result<Verdict> {
    let (nv, nw) = p.polytopes()?;
    let verdict = stable_polytopes(&nv, &nw)?;
    if verdict.status == Status::Unstable {
        check_witness(&verdict.witness_cocharacter().unwrap(), p)?;
    }
    Ok(verdict)
}

/// A cocharacter with `deg·w_λ(I) < w_λ(v)` and `w_λ(w) ≥ w_λ(v)` (strictly
/// greater when `strict`), from polytopes.
fn k_violation(
    nv: &WeightPolytope,
    nw: &WeightPolytope,
    deg: u64,
    simplex: &WeightPolytope,
    strict: bool,
) -> Result<Option<Cocharacter>> {
    let d = rat(deg as i64);
    let slack = if strict { Rational::one() } else { Rational::zero() };
    // λ is a counterexample iff for a_I = argmin over N(I) and a_v = argmin
    // over N(v): d(a_I, u) < (a, u) for a ∈ N(v), (c, u) ≥ (a_v, u) for c ∈ N(w).
    for a_i in simplex.vertices() {
        for a_v in nv.vertices() {
            let mut search = DirectionSearch::new(nv.ambient(), nv.rank())?;
            for a in nv.vertices() {
                let row = a.iter().zip(a_i).map(|(x, y)| x - &d * y).collect();
                search.require(row, Relation::Ge, Rational::one());
            }
            for c in nw.vertices() {
                let row = c.iter().zip(a_v).map(|(x, y)| x - y).collect();
                search.require(row, Relation::Ge, slack.clone());
            }
            if let Some(u) = search.solve() {
                return Ok(Some(primitive(&u)?));
            }
        }
    }
    Ok(None)
}

/// K-stability over the torus from polytopes.
///
/// `Stable` means K-stable. Otherwise the witness satisfies the antecedent
/// `deg·w_λ(I) < w_λ(v)`; the status is `Unstable` when it can also be
/// chosen with `w_λ(w) > w_λ(v)`, and `SemistableNotStable` when every such
/// cocharacter only reaches equality.
pub fn k_stable_polytopes(
    nv: &WeightPolytope,
    nw: &WeightPolytope,
    deg: u64,
    simplex: &WeightPolytope,
) -> Result<Verdict> {
    if deg == 0 {
        return Err(Error::domain("deg(V) must be positive"));
    }
    if nv.rank() != simplex.rank() || nv.ambient() != simplex.ambient() {
        return Err(Error::domain("N(I) lives in a different character space"));
    }
    let report = |u: &Cocharacter, kind: &str| -> Result<String> {
        Ok(format!(
            "u = {u}: {deg}·w(I) = {} < w(v) = {} but w(w) = {} {kind} w(v)",
            rat(deg as i64) * support_min_cocharacter(simplex, u)?,
            support_min_cocharacter(nv, u)?,
            support_min_cocharacter(nw, u)?
        ))
    };
    if let Some(u) = k_violation(nv, nw, deg, simplex, true)? {
        return Ok(Verdict::new(Status::Unstable, Some(&u), report(&u, ">")?));
    }
    if let Some(u) = k_violation(nv, nw, deg, simplex, false)? {
        return Ok(Verdict::new(Status::SemistableNotStable, Some(&u), report(&u, "=")?));
    }
    Ok(Verdict::new(
        Status::Stable,
        None,
        format!(
            "for each vertex pair of N(I) × N(v) the cone where {deg}·w(I) < w(v) and w(w) ≥ w(v) is empty"
        ),
    ))
}

/// Whether `w_λ(w) < w_λ(v)` whenever `deg·w_λ(I) < w_λ(v)`.
pub fn k_stable_torus(p: &Pair, deg: u64, simplex: &WeightPolytope) -> Result<Verdict> {
    let (nv, nw) = p.polytopes()?;
    let verdict = k_stable_polytopes(&nv, &nw, deg, simplex)?;
    if verdict.status == Status::Unstable {
        check_witness(&verdict.witness_cocharacter().unwrap(), p)?;
    }
    Ok(verdict)
}

/// Conjugating matrix for sample `index`; sample 0 is the identity.
pub fn sample_conjugation(n: usize, seed: u64, index: u64) -> ExactMatrix {
    if index == 0 {
        return Matrix::identity(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| Gaussian::new(rat(rng.random_range(-3..=3)), Rational::zero())).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("square");
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

fn format_matrix(m: &ExactMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(format_gaussian).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Searches conjugates `g·T·g⁻¹` of the torus for a destabilizing subgroup.
///
/// Sample `i` tests `(g_i⁻¹·v, g_i⁻¹·w)` over the diagonal torus; a witness
/// `u` there means `g_i λ^u g_i⁻¹` destabilizes `(v, w)`. The lowest failing
/// sample index is reported regardless of thread scheduling.
pub fn group_verdict_sampled(p: &Pair, samples: u64, seed: u64) -> Result<Verdict> {
    let n = p
        .v
        .rep()
        .group_size()
        .or(p.w.rep().group_size())
        .ok_or_else(|| Error::NoGroupAction("weights".into()))?;
    for x in [&p.v, &p.w] {
        if x.rep().group_size().is_none() {
            return Err(Error::NoGroupAction(x.rep().family().tag().into()));
        }
    }
    let found = (0..samples.max(1))
        .into_par_iter()
        .map(|i| -> Result<Option<(u64, ExactMatrix, Cocharacter)>> {
            let g = sample_conjugation(n, seed, i);
            let h = g.inverse()?;
            let moved = Pair::new(p.v.group_act(&h)?, p.w.group_act(&h)?)?;
            Ok(destabilizer(&moved)?.map(|u| (i, g, u)))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        Some(Ok(Some((i, g, u)))) => Ok(Verdict::new(
            Status::Unstable,
            Some(&u),
            format!(
                "sample {i}: g = {}; λ(t) = g·λ^u(t)·g⁻¹ with u = {u} has w_λ(w) > w_λ(v)",
                format_matrix(&g)
            ),
        )),
        Some(Err(e)) => Err(e),
        _ => Ok(Verdict::new(
            Status::UnknownSampled,
            None,
            format!("no destabilizing torus found in {} conjugates (seed {seed})", samples.max(1)),
        )),
    }
}
