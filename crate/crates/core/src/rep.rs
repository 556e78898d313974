//! Representations presented by weight data, and vectors in them.
//!
//! A representation is a [`Torus`] together with a [`Family`] saying how the
//! full group acts. Vectors are sparse maps from basis keys to exact Gaussian
//! rational coefficients, or lazy powers of another vector. Lazy powers keep
//! `q = deg(V)`-fold tensor powers and the powers in Chow coordinates cheap:
//! their weight polytope is the base polytope scaled by `q`.
//!
//! Polynomial families use the action `σ·f = f ∘ σ⁻¹`. Variables come in
//! rows of length `n`; a point row transforms as `x ↦ σx` and a covector
//! row as `ℓ ↦ ℓσ⁻¹`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{convex_hull_in, pairing, Character, Cocharacter, Torus, WeightPolytope};
use crate::matrix::{ComplexMatrix, ExactMatrix, Matrix, Scalar};
use crate::number::{format_gaussian, norm_sqr, parse_gaussian, rat, to_f64, Gaussian, Rational};
use crate::poly::{monomial_name, parse_monomial, Poly};

pub type BasisKey = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowKind {
    Point,
    Covector,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Binary forms of degree `degree` in `x, y`.
    SymmetricPowerSl2 { degree: u32 },
    /// `gl(n)` under left multiplication.
    MatrixSpace,
    /// `base^{⊗q}`; only pure tensor powers are represented.
    TensorPower { base: Arc<RepresentationSpec>, q: u32 },
    Trivial,
    /// Homogeneous polynomials of degree `degree` in the entries of a
    /// `rows.len() × n` matrix.
    PolynomialSpace { rows: Vec<RowKind>, names: Vec<String>, degree: u32 },
    /// A torus representation given only by weights; no group action.
    Weights { labels: Vec<String>, weights: Vec<Character> },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::SymmetricPowerSl2 { .. } => "symmetric-power-sl2",
            Family::MatrixSpace => "matrix-space-gl",
            Family::TensorPower { .. } => "tensor-power",
            Family::Trivial => "trivial",
            Family::PolynomialSpace { .. } => "polynomial-space",
            Family::Weights { .. } => "weights",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationSpec {
    torus: Torus,
    family: Family,
}

/// Torus of `SL(n)` in the encoding used throughout the crate.
pub fn sl_torus(n: usize) -> Torus {
    if n == 2 {
        Torus::Sl2
    } else {
        Torus::Sl { n }
    }
}

fn default_names(rows: &[RowKind], n: usize) -> Vec<String> {
    if rows.len() == 1 {
        let set: &[&str] = match (rows[0], n) {
            (RowKind::Point, 2) => &["x", "y"],
            (RowKind::Point, 3) => &["x", "y", "z"],
            (RowKind::Covector, 3) => &["u", "v", "w"],
            _ => &[],
        };
        if !set.is_empty() {
            return set.iter().map(|s| s.to_string()).collect();
        }
    }
    let letters = ["r", "s", "p", "q", "a", "b"];
    rows.iter()
        .enumerate()
        .flat_map(|(i, _)| {
            let l = letters.get(i).copied().unwrap_or("m");
            (0..n).map(move |j| format!("{l}{j}"))
        })
        .collect()
}

fn monomials(nvars: usize, degree: u32) -> Vec<BasisKey> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    if nvars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rat(k))
}

impl RepresentationSpec {
    pub fn symmetric_power_sl2(degree: u32) -> Arc<Self> {
        Arc::new(RepresentationSpec { torus: Torus::Sl2, family: Family::SymmetricPowerSl2 { degree } })
    }

    /// `gl(n)` with left multiplication by `SL(n)`.
    pub fn matrix_space(n: usize) -> Arc<Self> {
        Arc::new(RepresentationSpec { torus: sl_torus(n), family: Family::MatrixSpace })
    }

    pub fn trivial(torus: Torus) -> Arc<Self> {
        Arc::new(RepresentationSpec { torus, family: Family::Trivial })
    }

    pub fn polynomial_space(n: usize, rows: Vec<RowKind>, degree: u32) -> Arc<Self> {
        let names = default_names(&rows, n);
        Self::polynomial_space_named(n, rows, names, degree).expect("default names fit")
    }

    pub fn polynomial_space_named(n: usize, rows: Vec<RowKind>, names: Vec<String>, degree: u32) -> Result<Arc<Self>> {
        if rows.is_empty() || names.len() != rows.len() * n {
            return Err(Error::domain(format!(
                "{} variable names for {} rows of length {n}",
                names.len(),
                rows.len()
            )));
        }
        Ok(Arc::new(RepresentationSpec {
            torus: sl_torus(n),
            family: Family::PolynomialSpace { rows, names, degree },
        }))
    }

    pub fn tensor_power(base: Arc<RepresentationSpec>, q: u32) -> Result<Arc<Self>> {
        if q == 0 {
            return Err(Error::domain("tensor power exponent must be positive"));
        }
        Ok(Arc::new(RepresentationSpec { torus: base.torus, family: Family::TensorPower { base, q } }))
    }

    pub fn from_weights(rank: usize, labels: Vec<String>, weights: Vec<Character>) -> Result<Arc<Self>> {
        if labels.len() != weights.len() {
            return Err(Error::domain("every basis label needs exactly one weight"));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::domain("duplicate basis label"));
        }
        if let Some(w) = weights.iter().find(|w| w.rank() != rank) {
            return Err(Error::Dimension { expected: rank, found: w.rank() });
        }
        Ok(Arc::new(RepresentationSpec { torus: Torus::Free { rank }, family: Family::Weights { labels, weights } }))
    }

    pub fn torus(&self) -> Torus {
        self.torus
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn rank(&self) -> usize {
        self.torus.rank()
    }

    /// Matrix size of the acting group, if the family carries a group action.
    pub fn group_size(&self) -> Option<usize> {
        match self.family {
            Family::Weights { .. } => None,
            _ => self.torus.group_size(),
        }
    }

    fn n(&self) -> usize {
        self.torus.group_size().unwrap_or(0)
    }

    /// `(rows, names, degree)` for polynomial families.
    fn polynomial_layout(&self) -> Option<(Vec<RowKind>, Vec<String>, u32)> {
        match &self.family {
            Family::SymmetricPowerSl2 { degree } => {
                Some((vec![RowKind::Point], vec!["x".into(), "y".into()], *degree))
            }
            Family::PolynomialSpace { rows, names, degree } => Some((rows.clone(), names.clone(), *degree)),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial_layout().is_some()
    }

    pub fn variable_names(&self) -> Option<Vec<String>> {
        self.polynomial_layout().map(|(_, names, _)| names)
    }

    pub fn polynomial_degree(&self) -> Option<u32> {
        self.polynomial_layout().map(|(_, _, d)| d)
    }

    /// Same polynomial layout in another degree.
    pub fn with_degree(&self, degree: u32) -> Result<Arc<Self>> {
        let family = match &self.family {
            Family::SymmetricPowerSl2 { .. } => Family::SymmetricPowerSl2 { degree },
            Family::PolynomialSpace { rows, names, .. } => {
                Family::PolynomialSpace { rows: rows.clone(), names: names.clone(), degree }
            }
            _ => return Err(Error::domain("only polynomial families have a degree")),
        };
        Ok(Arc::new(RepresentationSpec { torus: self.torus, family }))
    }

    /// The ordered basis. Tensor powers are not enumerated.
    pub fn basis(&self) -> Result<Vec<BasisKey>> {
        match &self.family {
            Family::MatrixSpace => {
                let n = self.n() as u32;
                Ok((0..n).flat_map(|i| (0..n).map(move |j| vec![i, j])).collect())
            }
            Family::Trivial => Ok(vec![vec![]]),
            Family::Weights { labels, .. } => Ok((0..labels.len() as u32).map(|i| vec![i]).collect()),
            Family::TensorPower { .. } => Err(Error::domain("tensor power bases are not enumerated")),
            _ => {
                let (_, names, degree) = self.polynomial_layout().unwrap();
                Ok(monomials(names.len(), degree))
            }
        }
    }

    fn check_key(&self, key: &BasisKey) -> Result<()> {
        let ok = match &self.family {
            Family::MatrixSpace => key.len() == 2 && key.iter().all(|&i| (i as usize) < self.n()),
            Family::Trivial => key.is_empty(),
            Family::Weights { labels, .. } => key.len() == 1 && (key[0] as usize) < labels.len(),
            Family::TensorPower { .. } => false,
            _ => {
                let (_, names, degree) = self.polynomial_layout().unwrap();
                key.len() == names.len() && key.iter().sum::<u32>() == degree
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("basis key {key:?} does not belong to {}", self.family.tag())))
        }
    }

    pub fn label(&self, key: &BasisKey) -> String {
        match &self.family {
            Family::MatrixSpace => format!("e_{}_{}", key[0], key[1]),
            Family::Trivial => "1".into(),
            Family::Weights { labels, .. } => labels[key[0] as usize].clone(),
            Family::TensorPower { .. } => format!("{key:?}"),
            _ => {
                let (_, names, _) = self.polynomial_layout().unwrap();
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                monomial_name(key, &refs)
            }
        }
    }

    pub fn key_of(&self, label: &str) -> Result<BasisKey> {
        let key = match &self.family {
            Family::MatrixSpace => {
                let parts: Vec<&str> = label.trim().split('_').collect();
                match parts.as_slice() {
                    ["e", i, j] => vec![
                        i.parse().map_err(|_| Error::parse(format!("bad label `{label}`")))?,
                        j.parse().map_err(|_| Error::parse(format!("bad label `{label}`")))?,
                    ],
                    _ => return Err(Error::parse(format!("matrix labels look like e_0_1, got `{label}`"))),
                }
            }
            Family::Trivial => {
                if label.trim() != "1" {
                    return Err(Error::parse("the trivial representation has the single label `1`"));
                }
                vec![]
            }
            Family::Weights { labels, .. } => {
                let i = labels
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| Error::parse(format!("unknown basis label `{label}`")))?;
                vec![i as u32]
            }
            Family::TensorPower { .. } => {
                return Err(Error::domain("tensor power vectors are given through their base vector"))
            }
            _ => {
                let (_, names, _) = self.polynomial_layout().unwrap();
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                parse_monomial(label, &refs)?
            }
        };
        self.check_key(&key)?;
        Ok(key)
    }

    /// Exponents of `diag(t_0, …, t_{n-1})` on a basis vector.
    pub fn diagonal_character(&self, key: &BasisKey) -> Result<Vec<i64>> {
        let n = self.n();
        match &self.family {
            Family::MatrixSpace => {
                let mut e = vec![0; n];
                e[key[0] as usize] = 1;
                Ok(e)
            }
            Family::Trivial => Ok(vec![0; n]),
            Family::Weights { .. } => Err(Error::NoGroupAction(self.family.tag().into())),
            Family::TensorPower { base, q } => {
                // Keys are q base keys laid end to end.
                let width = key.len() / *q as usize;
                let mut e = vec![0; n];
                for chunk in key.chunks(width.max(1)) {
                    for (a, b) in e.iter_mut().zip(base.diagonal_character(&chunk.to_vec())?) {
                        *a += b;
                    }
                }
                Ok(e)
            }
            _ => {
                let (rows, _, _) = self.polynomial_layout().unwrap();
                let mut e = vec![0i64; n];
                for (r, kind) in rows.iter().enumerate() {
                    for j in 0..n {
                        let exp = key[r * n + j] as i64;
                        match kind {
                            RowKind::Point => e[j] -= exp,
                            RowKind::Covector => e[j] += exp,
                        }
                    }
                }
                Ok(e)
            }
        }
    }

    /// Character of a basis vector in the torus encoding.
    pub fn character(&self, key: &BasisKey) -> Result<Character> {
        match &self.family {
            Family::Weights { weights, .. } => Ok(weights[key[0] as usize].clone()),
            _ => Ok(self.torus.encode_character(&self.diagonal_character(key)?)),
        }
    }

    /// All characters of the representation (the support `A`).
    pub fn characters(&self) -> Result<BTreeSet<Character>> {
        match &self.family {
            Family::TensorPower { base, q } => Ok(sumset(&base.characters()?, *q)),
            _ => self.basis()?.iter().map(|k| self.character(k)).collect(),
        }
    }

    /// Hull of all characters; a polynomial space of degree `d` gives `d`
    /// times the hull of its variables without enumerating monomials.
    pub fn full_weight_polytope(&self) -> Result<WeightPolytope> {
        let ambient = self.torus.ambient();
        match &self.family {
            Family::TensorPower { base, q } => Ok(base.full_weight_polytope()?.scaled(&rat(*q as i64))),
            Family::PolynomialSpace { degree, .. } | Family::SymmetricPowerSl2 { degree } if *degree > 1 => {
                let linear = self.with_degree(1)?;
                Ok(linear.full_weight_polytope()?.scaled(&rat(*degree as i64)))
            }
            _ => {
                let pts: Vec<_> = self.characters()?.iter().map(|c| c.to_point()).collect();
                convex_hull_in(ambient, &pts)
            }
        }
    }

    /// Squared norm of a basis vector: `α!/|α|!` for polynomial families, 1 otherwise.
    pub fn norm_weight(&self, key: &BasisKey) -> Rational {
        match self.polynomial_layout() {
            Some((_, _, degree)) => {
                let num = key.iter().fold(Rational::one(), |acc, &e| acc * factorial(e));
                num / factorial(degree)
            }
            None => Rational::one(),
        }
    }

    pub fn to_descriptor(&self) -> RepresentationDescriptor {
        let family = match &self.family {
            Family::SymmetricPowerSl2 { degree } => FamilyDescriptor::SymmetricPowerSl2 { degree: *degree },
            Family::MatrixSpace => FamilyDescriptor::MatrixSpaceGl { size: self.n() },
            Family::TensorPower { base, q } => {
                FamilyDescriptor::TensorPower { base: Box::new(base.to_descriptor()), q: *q }
            }
            Family::Trivial => FamilyDescriptor::Trivial,
            Family::PolynomialSpace { rows, names, degree } => FamilyDescriptor::PolynomialSpace {
                vars: names.clone(),
                rows: Some(rows.clone()),
                degree: *degree,
            },
            Family::Weights { .. } => FamilyDescriptor::Weights,
        };
        let (basis, weights) = match self.basis() {
            Ok(keys) if keys.len() <= 4096 => {
                let labels: Vec<String> = keys.iter().map(|k| self.label(k)).collect();
                let weights = keys
                    .iter()
                    .zip(&labels)
                    .filter_map(|(k, l)| self.character(k).ok().map(|c| (l.clone(), c.0)))
                    .collect();
                (Some(labels), Some(weights))
            }
            _ => (None, None),
        };
        RepresentationDescriptor {
            rank: Some(self.rank()),
            basis,
            weights,
            family,
            torus: match self.family {
                Family::Trivial => Some(self.torus),
                _ => None,
            },
        }
    }

    pub fn from_descriptor(desc: &RepresentationDescriptor) -> Result<Arc<Self>> {
        let rep = match &desc.family {
            FamilyDescriptor::SymmetricPowerSl2 { degree } => Self::symmetric_power_sl2(*degree),
            FamilyDescriptor::MatrixSpaceGl { size } => {
                if *size < 2 {
                    return Err(Error::domain("matrix-space-gl needs size at least 2"));
                }
                Self::matrix_space(*size)
            }
            FamilyDescriptor::TensorPower { base, q } => Self::tensor_power(Self::from_descriptor(base)?, *q)?,
            FamilyDescriptor::Trivial => {
                let torus = desc
                    .torus
                    .or(desc.rank.map(|rank| Torus::Free { rank }))
                    .ok_or_else(|| Error::parse("trivial family needs a torus or rank"))?;
                Self::trivial(torus)
            }
            FamilyDescriptor::PolynomialSpace { vars, rows, degree } => {
                let rows = rows.clone().unwrap_or_else(|| vec![RowKind::Point]);
                if rows.is_empty() || vars.len() % rows.len() != 0 {
                    return Err(Error::parse("variable count must be a multiple of the row count"));
                }
                let n = vars.len() / rows.len();
                if n < 2 {
                    return Err(Error::parse("polynomial rows need at least two variables"));
                }
                Self::polynomial_space_named(n, rows, vars.clone(), *degree)?
            }
            FamilyDescriptor::Weights => {
                let rank = desc.rank.ok_or_else(|| Error::parse("weights family needs `rank`"))?;
                let basis = desc.basis.clone().ok_or_else(|| Error::parse("weights family needs `basis`"))?;
                let table = desc.weights.as_ref().ok_or_else(|| Error::parse("weights family needs `weights`"))?;
                let weights = basis
                    .iter()
                    .map(|l| {
                        table
                            .get(l)
                            .map(|w| Character(w.clone()))
                            .ok_or_else(|| Error::parse(format!("no weight for label `{l}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if table.len() != basis.len() {
                    return Err(Error::parse("weights name a label outside the basis"));
                }
                return Self::from_weights(rank, basis, weights);
            }
        };
        if let Some(rank) = desc.rank {
            if rank != rep.rank() {
                return Err(Error::Dimension { expected: rep.rank(), found: rank });
            }
        }
        if let Some(table) = &desc.weights {
            for (label, w) in table {
                let key = rep.key_of(label)?;
                if rep.character(&key)?.0 != *w {
                    return Err(Error::parse(format!("declared weight of `{label}` disagrees with the family")));
                }
            }
        }
        if let Some(basis) = &desc.basis {
            for label in basis {
                rep.key_of(label)?;
            }
        }
        Ok(rep)
    }
}

fn sumset(base: &BTreeSet<Character>, q: u32) -> BTreeSet<Character> {
    let mut acc: BTreeSet<Character> = base.iter().map(|c| Character(vec![0; c.rank()])).take(1).collect();
    for _ in 0..q {
        let mut next = BTreeSet::new();
        for a in &acc {
            for b in base {
                next.insert(Character(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()));
            }
        }
        acc = next;
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
enum VectorData {
    Sparse(BTreeMap<BasisKey, Gaussian>),
    Power { base: Box<WeightedVector>, exponent: u32 },
}

/// A nonzero vector of a representation.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedVector {
    rep: Arc<RepresentationSpec>,
    data: VectorData,
}

/// Image of a vector under a floating-point group element, in the form the
/// log-domain energy evaluation needs.
#[derive(Debug, Clone)]
pub struct FloatImage {
    /// `(diagonal character, |c|² × norm weight)` per nonzero component.
    pub terms: Vec<(Vec<i64>, f64)>,
    /// Coordinates in the orthonormal basis.
    pub components: BTreeMap<BasisKey, Complex64>,
    /// The vector is the `multiplicity`-th tensor power of the one described.
    pub multiplicity: u32,
}

impl FloatImage {
    /// `log ‖exp(D)·x‖²` for a real diagonal `D`, without overflow.
    pub fn log_norm_sqr_after(&self, diagonal: &[f64]) -> f64 {
        let logs: Vec<f64> = self
            .terms
            .iter()
            .filter(|(_, m)| *m > 0.0)
            .map(|(chi, m)| {
                let phase: f64 = chi.iter().zip(diagonal).map(|(&c, d)| c as f64 * d).sum();
                2.0 * phase + m.ln()
            })
            .collect();
        self.multiplicity as f64 * log_sum_exp(&logs)
    }

    pub fn log_norm_sqr(&self) -> f64 {
        let n = self.terms.first().map_or(0, |t| t.0.len());
        self.log_norm_sqr_after(&vec![0.0; n])
    }

    /// `‖x‖²` summed directly, without the log-domain guard.
    pub fn norm_sqr(&self) -> f64 {
        let s: f64 = self.components.values().map(|c| c.norm_sqr()).sum();
        s.powi(self.multiplicity as i32)
    }

    /// `⟨self, other⟩`, linear in the second argument.
    pub fn inner(&self, other: &FloatImage) -> Result<Complex64> {
        if self.multiplicity != other.multiplicity {
            return Err(Error::domain("inner product of vectors in different representations"));
        }
        let s: Complex64 = self
            .components
            .iter()
            .filter_map(|(k, a)| other.components.get(k).map(|b| a.conj() * b))
            .sum();
        Ok(s.powu(self.multiplicity))
    }
}

pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

impl WeightedVector {
    pub fn new(rep: Arc<RepresentationSpec>, coeffs: BTreeMap<BasisKey, Gaussian>) -> Result<Self> {
        if matches!(rep.family, Family::TensorPower { .. }) {
            return Err(Error::domain("tensor power vectors are built with `tensor_power`"));
        }
        let mut clean = BTreeMap::new();
        for (k, c) in coeffs {
            rep.check_key(&k)?;
            if !c.is_zero() {
                clean.insert(k, c);
            }
        }
        if clean.is_empty() {
            return Err(Error::domain("the zero vector is not allowed"));
        }
        Ok(WeightedVector { rep, data: VectorData::Sparse(clean) })
    }

    pub fn from_labels(rep: Arc<RepresentationSpec>, entries: &[(&str, Gaussian)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, c) in entries {
            let key = rep.key_of(label)?;
            let slot = map.entry(key).or_insert_with(Gaussian::zero);
            *slot += c.clone();
        }
        Self::new(rep, map)
    }

    /// A polynomial vector from its exact expansion.
    pub fn from_poly(rep: Arc<RepresentationSpec>, poly: &Poly<Rational>) -> Result<Self> {
        let coeffs = poly
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), Gaussian::new(c.clone(), Rational::zero())))
            .collect();
        Self::new(rep, coeffs)
    }

    /// Identity matrix in `gl(n)`.
    pub fn identity(n: usize) -> Self {
        let rep = RepresentationSpec::matrix_space(n);
        let coeffs = (0..n as u32).map(|i| (vec![i, i], Gaussian::one())).collect();
        Self::new(rep, coeffs).expect("identity is nonzero")
    }

    /// Pure tensor power `v^{⊗q}`.
    pub fn tensor_power(base: WeightedVector, q: u32) -> Result<Self> {
        let rep = RepresentationSpec::tensor_power(base.rep.clone(), q)?;
        Ok(WeightedVector { rep, data: VectorData::Power { base: Box::new(base), exponent: q } })
    }

    /// `f^k` for a polynomial vector, kept unexpanded.
    pub fn polynomial_power(base: WeightedVector, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("power exponent must be positive"));
        }
        let degree = base
            .rep
            .polynomial_degree()
            .ok_or_else(|| Error::domain("polynomial power of a non-polynomial vector"))?;
        let rep = base.rep.with_degree(degree * k)?;
        Ok(WeightedVector { rep, data: VectorData::Power { base: Box::new(base), exponent: k } })
    }

    pub fn rep(&self) -> &Arc<RepresentationSpec> {
        &self.rep
    }

    pub fn torus(&self) -> Torus {
        self.rep.torus
    }

    /// `(base, exponent)` for lazy powers.
    pub fn as_power(&self) -> Option<(&WeightedVector, u32)> {
        match &self.data {
            VectorData::Power { base, exponent } => Some((base, *exponent)),
            VectorData::Sparse(_) => None,
        }
    }

    fn is_tensor(&self) -> bool {
        matches!(self.rep.family, Family::TensorPower { .. })
    }

    /// Explicit coefficients; polynomial powers are expanded, tensor powers are not.
    pub fn coefficients(&self) -> Result<BTreeMap<BasisKey, Gaussian>> {
        match &self.data {
            VectorData::Sparse(map) => Ok(map.clone()),
            VectorData::Power { base, exponent } => {
                if self.is_tensor() {
                    return Err(Error::domain("tensor powers are not expanded"));
                }
                let p = base.to_poly()?.pow(*exponent);
                Ok(p.into_terms())
            }
        }
    }

    /// The vector as a polynomial, for polynomial families.
    pub fn to_poly(&self) -> Result<Poly<Gaussian>> {
        let names = self
            .rep
            .variable_names()
            .ok_or_else(|| Error::domain("not a polynomial vector"))?;
        match &self.data {
            VectorData::Sparse(map) => Ok(Poly::from_terms(names.len(), map.clone())),
            VectorData::Power { base, exponent } => Ok(base.to_poly()?.pow(*exponent)),
        }
    }

    /// `A(v)`: the weights with a nonzero component.
    pub fn support(&self) -> Result<BTreeSet<Character>> {
        match &self.data {
            VectorData::Sparse(map) => map.keys().map(|k| self.rep.character(k)).collect(),
            VectorData::Power { base, exponent } if self.is_tensor() => Ok(sumset(&base.support()?, *exponent)),
            VectorData::Power { .. } => self.coefficients()?.keys().map(|k| self.rep.character(k)).collect(),
        }
    }

    /// `N(v)`, the convex hull of the support.
    pub fn weight_polytope(&self) -> Result<WeightPolytope> {
        match &self.data {
            VectorData::Sparse(_) => {
                let torus = self.torus();
                let pts: Vec<_> = self.support()?.iter().map(|c| c.to_point()).collect();
                convex_hull_in(torus.ambient(), &pts)
            }
            VectorData::Power { base, exponent } => Ok(base.weight_polytope()?.scaled(&rat(*exponent as i64))),
        }
    }

    /// `min_{a ∈ A(v)} (a, u)`.
    pub fn weight(&self, u: &Cocharacter) -> Result<i64> {
        self.torus().check_cocharacter(u)?;
        match &self.data {
            VectorData::Sparse(map) => {
                let mut best: Option<i64> = None;
                for k in map.keys() {
                    let p = pairing(u, &self.rep.character(k)?)?;
                    best = Some(best.map_or(p, |b| b.min(p)));
                }
                Ok(best.expect("nonzero vector"))
            }
            VectorData::Power { base, exponent } => Ok(*exponent as i64 * base.weight(u)?),
        }
    }

    /// Components of minimal weight along `u`, i.e. `lim α^{-k} λ(α)v`.
    pub fn lowest_weight_part(&self, u: &Cocharacter) -> Result<WeightedVector> {
        let k = match &self.data {
            VectorData::Power { base, exponent } => {
                let part = base.lowest_weight_part(u)?;
                return Ok(WeightedVector {
                    rep: self.rep.clone(),
                    data: VectorData::Power { base: Box::new(part), exponent: *exponent },
                });
            }
            VectorData::Sparse(_) => self.weight(u)?,
        };
        let VectorData::Sparse(map) = &self.data else { unreachable!() };
        let mut kept = BTreeMap::new();
        for (key, c) in map {
            if pairing(u, &self.rep.character(key)?)? == k {
                kept.insert(key.clone(), c.clone());
            }
        }
        Self::new(self.rep.clone(), kept)
    }

    fn map_sparse(
        &self,
        f: &dyn Fn(&RepresentationSpec, &BTreeMap<BasisKey, Gaussian>) -> Result<BTreeMap<BasisKey, Gaussian>>,
    ) -> Result<Self> {
        match &self.data {
            VectorData::Sparse(map) => Self::new(self.rep.clone(), f(&self.rep, map)?),
            VectorData::Power { base, exponent } => Ok(WeightedVector {
                rep: self.rep.clone(),
                data: VectorData::Power { base: Box::new(base.map_sparse(f)?), exponent: *exponent },
            }),
        }
    }

    /// Multiplies each component `v_a` by `a(t) = Π t_i^{a_i}`.
    pub fn torus_act(&self, t: &[Gaussian]) -> Result<Self> {
        let torus = self.torus();
        if t.len() != torus.rank() {
            return Err(Error::Dimension { expected: torus.rank(), found: t.len() });
        }
        if t.iter().any(|x| x.is_zero()) {
            return Err(Error::domain("torus element has a zero coordinate"));
        }
        if let Torus::Sl { .. } = torus {
            let prod = t.iter().fold(Gaussian::one(), |acc, x| acc * x);
            if !prod.is_one() {
                return Err(Error::domain("an element of the SL(n) torus has product one"));
            }
        }
        self.map_sparse(&|rep, map| {
            let mut out = BTreeMap::new();
            for (key, c) in map {
                let chi = rep.character(key)?;
                let mut scale = Gaussian::one();
                for (x, &e) in t.iter().zip(&chi.0) {
                    let f = if e >= 0 { x.clone() } else { Gaussian::one() / x };
                    for _ in 0..e.unsigned_abs() {
                        scale *= &f;
                    }
                }
                out.insert(key.clone(), c * scale);
            }
            Ok(out)
        })
    }

    /// `σ·v` for an exact invertible matrix `σ`.
    pub fn group_act(&self, sigma: &ExactMatrix) -> Result<Self> {
        match &self.data {
            VectorData::Sparse(map) => Self::new(self.rep.clone(), act_terms(&self.rep, map, sigma)?),
            VectorData::Power { base, exponent } => Ok(WeightedVector {
                rep: self.rep.clone(),
                data: VectorData::Power { base: Box::new(base.group_act(sigma)?), exponent: *exponent },
            }),
        }
    }

    /// Image under a floating-point group element, ready for log-domain norms.
    pub fn act_complex(&self, sigma: &ComplexMatrix) -> Result<FloatImage> {
        match &self.data {
            VectorData::Sparse(map) => {
                let floats: BTreeMap<BasisKey, Complex64> = map
                    .iter()
                    .map(|(k, c)| (k.clone(), Complex64::new(to_f64(&c.re), to_f64(&c.im))))
                    .collect();
                let image = act_terms(&self.rep, &floats, sigma)?;
                self.float_image(&self.rep, image, 1)
            }
            VectorData::Power { base, exponent } if self.is_tensor() => {
                let mut img = base.act_complex(sigma)?;
                img.multiplicity *= exponent;
                Ok(img)
            }
            VectorData::Power { base, exponent } => {
                let floats: BTreeMap<BasisKey, Complex64> = base
                    .coefficients()?
                    .iter()
                    .map(|(k, c)| (k.clone(), Complex64::new(to_f64(&c.re), to_f64(&c.im))))
                    .collect();
                let image = act_terms(&base.rep, &floats, sigma)?;
                let nvars = self.rep.variable_names().unwrap().len();
                let expanded = Poly::from_terms(nvars, image).pow(*exponent).into_terms();
                self.float_image(&self.rep, expanded, 1)
            }
        }
    }

    fn float_image(&self, rep: &RepresentationSpec, terms: BTreeMap<BasisKey, Complex64>, multiplicity: u32) -> Result<FloatImage> {
        let mut chars = Vec::with_capacity(terms.len());
        let mut components = BTreeMap::new();
        for (k, c) in terms {
            let scaled = c * to_f64(&rep.norm_weight(&k)).sqrt();
            chars.push((rep.diagonal_character(&k)?, scaled.norm_sqr()));
            components.insert(k, scaled);
        }
        Ok(FloatImage { terms: chars, components, multiplicity })
    }

    /// Exact `‖v‖²` in the orthonormal basis of the family.
    pub fn norm_squared(&self) -> Result<Rational> {
        match &self.data {
            VectorData::Power { base, exponent } if self.is_tensor() => {
                let b = base.norm_squared()?;
                Ok((0..*exponent).fold(Rational::one(), |acc, _| acc * &b))
            }
            _ => Ok(self
                .coefficients()?
                .iter()
                .map(|(k, c)| norm_sqr(c) * self.rep.norm_weight(k))
                .sum()),
        }
    }

    pub fn hermitian_norm(&self) -> Result<f64> {
        Ok(to_f64(&self.norm_squared()?).sqrt())
    }

    pub fn to_descriptor(&self) -> Result<VectorDescriptor> {
        let labels = |v: &WeightedVector| -> Result<BTreeMap<String, String>> {
            Ok(v.coefficients()?
                .iter()
                .map(|(k, c)| (v.rep.label(k), format_gaussian(c)))
                .collect())
        };
        match &self.data {
            VectorData::Sparse(_) => Ok(VectorDescriptor::Coefficients(labels(self)?)),
            VectorData::Power { base, exponent } => Ok(VectorDescriptor::Power {
                base: labels(base)?,
                exponent: *exponent,
            }),
        }
    }

    pub fn from_descriptor(rep: Arc<RepresentationSpec>, desc: &VectorDescriptor) -> Result<Self> {
        let parse = |rep: &Arc<RepresentationSpec>, map: &BTreeMap<String, String>| -> Result<WeightedVector> {
            let mut coeffs = BTreeMap::new();
            for (label, text) in map {
                coeffs.insert(rep.key_of(label)?, parse_gaussian(text)?);
            }
            WeightedVector::new(rep.clone(), coeffs)
        };
        match (desc, &rep.family) {
            (VectorDescriptor::Coefficients(map), Family::TensorPower { .. }) if map.is_empty() => {
                Err(Error::domain("the zero vector is not allowed"))
            }
            (VectorDescriptor::Power { base, exponent }, Family::TensorPower { base: base_rep, q }) => {
                if exponent != q {
                    return Err(Error::parse(format!("tensor power {q} given exponent {exponent}")));
                }
                Self::tensor_power(parse(base_rep, base)?, *q)
            }
            (VectorDescriptor::Coefficients(_), Family::TensorPower { .. }) => {
                Err(Error::parse("tensor power vectors are given as {base, exponent}"))
            }
            (VectorDescriptor::Power { base, exponent }, _) => {
                let degree = rep
                    .polynomial_degree()
                    .ok_or_else(|| Error::parse("powers are only supported for polynomial families"))?;
                if *exponent == 0 || degree % exponent != 0 {
                    return Err(Error::parse("power exponent must divide the degree"));
                }
                let base_rep = rep.with_degree(degree / exponent)?;
                Self::polynomial_power(parse(&base_rep, base)?, *exponent)
            }
            (VectorDescriptor::Coefficients(map), _) => parse(&rep, map),
        }
    }
}

/// Applies `σ` to sparse coefficients of a non-power vector.
fn act_terms<T: Scalar>(
    rep: &RepresentationSpec,
    terms: &BTreeMap<BasisKey, T>,
    sigma: &Matrix<T>,
) -> Result<BTreeMap<BasisKey, T>> {
    if let Family::Weights { .. } = rep.family {
        return Err(Error::NoGroupAction(rep.family.tag().into()));
    }
    if let Family::Trivial = rep.family {
        return Ok(terms.clone());
    }
    let n = rep.n();
    if sigma.size() != n {
        return Err(Error::Dimension { expected: n, found: sigma.size() });
    }
    let inverse = sigma.inverse()?;
    match &rep.family {
        Family::MatrixSpace => {
            let mut out: BTreeMap<BasisKey, T> = BTreeMap::new();
            for (key, c) in terms {
                let (k, j) = (key[0] as usize, key[1] as usize);
                for i in 0..n {
                    let s = sigma.get(i, k);
                    if s.is_zero() {
                        continue;
                    }
                    let slot = out.entry(vec![i as u32, j as u32]).or_insert_with(T::zero);
                    *slot = slot.clone() + s.clone() * c.clone();
                }
            }
            out.retain(|_, c| !c.is_zero());
            Ok(out)
        }
        Family::TensorPower { .. } => Err(Error::domain("tensor powers act through their base")),
        _ => {
            let (rows, names, _) = rep.polynomial_layout().unwrap();
            let nvars = names.len();
            let mut images = Vec::with_capacity(nvars);
            for (r, kind) in rows.iter().enumerate() {
                for j in 0..n {
                    let mut img = Poly::zero(nvars);
                    for k in 0..n {
                        let coeff = match kind {
                            RowKind::Point => inverse.get(j, k).clone(),
                            RowKind::Covector => sigma.get(k, j).clone(),
                        };
                        let mut m = vec![0; nvars];
                        m[r * n + k] = 1;
                        img.add_term(m, coeff);
                    }
                    images.push(img);
                }
            }
            let p = Poly::from_terms(nvars, terms.clone());
            Ok(p.substitute(&images).into_terms())
        }
    }
}

/// `λ^u(t)` as a matrix, for a nonzero exact scalar `t`.
pub fn cocharacter_matrix(torus: Torus, u: &Cocharacter, t: &Gaussian) -> Result<ExactMatrix> {
    let exps = torus.diagonal_exponents(u)?;
    let entries = exps
        .iter()
        .map(|&e| {
            let base = if e >= 0 { t.clone() } else { Gaussian::one() / t };
            (0..e.unsigned_abs()).fold(Gaussian::one(), |acc, _| acc * &base)
        })
        .collect();
    Ok(Matrix::diagonal(entries))
}

/// Matrix of the torus element with coordinates `t` (for `SL(2)`, `t = (s)` is `diag(1/s, s)`).
pub fn torus_element_matrix(torus: Torus, t: &[Gaussian]) -> Result<ExactMatrix> {
    match torus {
        Torus::Sl2 => Ok(Matrix::diagonal(vec![Gaussian::one() / &t[0], t[0].clone()])),
        Torus::Sl { .. } => Ok(Matrix::diagonal(t.to_vec())),
        Torus::Free { .. } => Err(Error::NoGroupAction("free torus".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum FamilyDescriptor {
    SymmetricPowerSl2 { degree: u32 },
    MatrixSpaceGl { size: usize },
    TensorPower { base: Box<RepresentationDescriptor>, q: u32 },
    Trivial,
    PolynomialSpace {
        vars: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rows: Option<Vec<RowKind>>,
        degree: u32,
    },
    Weights,
}

/// `{ rank, basis: [labels], weights: {label: [ints]}, family: tag }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, Vec<i64>>>,
    pub family: FamilyDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<Torus>,
}

/// `{label: "re+imi"}`, or a lazy power `{base: {...}, exponent: k}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorDescriptor {
    Power { base: BTreeMap<String, String>, exponent: u32 },
    Coefficients(BTreeMap<String, String>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{gauss, ratio};
    use crate::poly::RatPoly;

    fn g(n: i64) -> Gaussian {
        gauss(rat(n))
    }

    fn sym(d: u32, entries: &[(&str, i64)]) -> WeightedVector {
        let rep = RepresentationSpec::symmetric_power_sl2(d);
        let e: Vec<(&str, Gaussian)> = entries.iter().map(|(l, c)| (*l, g(*c))).collect();
        WeightedVector::from_labels(rep, &e).unwrap()
    }

    fn chars(v: &[i64]) -> BTreeSet<Character> {
        v.iter().map(|&x| Character(vec![x])).collect()
    }

    fn exact(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rational_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn support_examples() {
        assert_eq!(sym(4, &[("x^4", 1)]).support().unwrap(), chars(&[4]));
        assert_eq!(sym(4, &[("x^3*y", 1), ("x*y^3", 1)]).support().unwrap(), chars(&[2, -2]));
        let id = WeightedVector::identity(3).support().unwrap();
        let expected: BTreeSet<Character> =
            [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]].into_iter().map(Character).collect();
        assert_eq!(id, expected);
        let rep = RepresentationSpec::symmetric_power_sl2(2);
        assert!(WeightedVector::new(rep, BTreeMap::new()).is_err());
    }

    #[test]
    fn weight_polytope_examples() {
        let p = sym(4, &[("x^3*y", 1)]).weight_polytope().unwrap();
        assert_eq!(p.vertices(), &[vec![rat(2)]]);
        let p = sym(4, &[("x^4", 1), ("y^4", 1)]).weight_polytope().unwrap();
        assert_eq!(p.vertices(), &[vec![rat(-4)], vec![rat(4)]]);
        // N(I) is the standard simplex (projected), containing the origin.
        let simplex = WeightedVector::identity(3).weight_polytope().unwrap();
        assert_eq!(simplex.vertices().len(), 3);
        assert!(simplex.contains_point(&[rat(0), rat(0), rat(0)]));
        assert!(simplex.vertices().contains(&vec![ratio(2, 3), ratio(-1, 3), ratio(-1, 3)]));
    }

    #[test]
    fn torus_act_examples() {
        let v = sym(4, &[("x^4", 1), ("x^2*y^2", 3)]);
        assert_eq!(v.torus_act(&[g(1)]).unwrap(), v);
        let mid = sym(4, &[("x^2*y^2", 1)]);
        assert_eq!(mid.torus_act(&[g(7)]).unwrap(), mid);
        assert_eq!(sym(4, &[("x^4", 1)]).torus_act(&[g(2)]).unwrap(), sym(4, &[("x^4", 16)]));
        assert!(v.torus_act(&[g(0)]).is_err());
        let id = WeightedVector::identity(3);
        assert!(id.torus_act(&[g(2), g(3), g(1)]).is_err());
        assert!(id.torus_act(&[g(2), gauss(ratio(1, 2)), g(1)]).is_ok());
    }

    #[test]
    fn group_act_examples() {
        let f = sym(2, &[("x*y", 1)]);
        assert_eq!(f.group_act(&Matrix::identity(2)).unwrap(), f);
        // f ∘ σ⁻¹ with σ = [[1,1],[0,1]]: (x - y) y.
        let shear = exact(&[&[1, 1], &[0, 1]]);
        assert_eq!(f.group_act(&shear).unwrap(), sym(2, &[("x*y", 1), ("y^2", -1)]));
        assert!(f.group_act(&exact(&[&[1, 1], &[1, 1]])).is_err());
        // Diagonal σ agrees with the torus action.
        let v = sym(3, &[("x^3", 1), ("x*y^2", 5), ("y^3", -2)]);
        let s = gauss(ratio(3, 2));
        let sigma = torus_element_matrix(Torus::Sl2, std::slice::from_ref(&s)).unwrap();
        assert_eq!(v.group_act(&sigma).unwrap(), v.torus_act(&[s]).unwrap());
        let triv = WeightedVector::new(RepresentationSpec::trivial(Torus::Sl2), [(vec![], g(1))].into()).unwrap();
        assert_eq!(triv.group_act(&shear).unwrap(), triv);
    }

    #[test]
    fn weights_family_has_no_action() {
        let rep = RepresentationSpec::from_weights(1, vec!["a".into()], vec![Character(vec![1])]).unwrap();
        let v = WeightedVector::from_labels(rep, &[("a", g(1))]).unwrap();
        assert!(matches!(v.group_act(&Matrix::identity(2)), Err(Error::NoGroupAction(_))));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(sym(4, &[("x^4", 1)]).hermitian_norm().unwrap(), 1.0);
        assert_eq!(sym(4, &[("x^4", 3), ("y^4", 4)]).hermitian_norm().unwrap(), 5.0);
        assert!((WeightedVector::identity(3).hermitian_norm().unwrap() - 3f64.sqrt()).abs() < 1e-15);
        // Bombieri weight of x^2 y^2 in degree 4 is 2!2!/4! = 1/6.
        assert_eq!(sym(4, &[("x^2*y^2", 6)]).norm_squared().unwrap(), rat(6));
    }

    #[test]
    fn tensor_power_support_and_weights() {
        let v = sym(2, &[("x^2", 1), ("y^2", 1)]);
        let sq = WeightedVector::tensor_power(v.clone(), 2).unwrap();
        assert_eq!(sq.support().unwrap(), chars(&[-4, 0, 4]));
        let u = Cocharacter(vec![1]);
        assert_eq!(sq.weight(&u).unwrap(), 2 * v.weight(&u).unwrap());
        let iq = WeightedVector::tensor_power(WeightedVector::identity(3), 4).unwrap();
        let lam = Cocharacter(vec![2, -1, -1]);
        assert_eq!(iq.weight(&lam).unwrap(), -4);
        assert_eq!(iq.support().unwrap().len(), 15);
        assert_eq!(iq.norm_squared().unwrap(), rat(81));
    }

    #[test]
    fn polynomial_power_matches_expansion() {
        let names = ["x", "y", "z"];
        let rep = RepresentationSpec::polynomial_space(3, vec![RowKind::Point], 2);
        let f = WeightedVector::from_poly(rep, &RatPoly::parse("x*z - y^2 + x^2", &names).unwrap()).unwrap();
        let cube = WeightedVector::polynomial_power(f.clone(), 3).unwrap();
        let explicit = WeightedVector::new(cube.rep().clone(), cube.coefficients().unwrap()).unwrap();
        for u in [[1, 0, -1], [2, -1, -1], [-3, 1, 2]] {
            let u = Cocharacter(u.to_vec());
            assert_eq!(cube.weight(&u).unwrap(), explicit.weight(&u).unwrap());
        }
        assert_eq!(cube.norm_squared().unwrap(), explicit.norm_squared().unwrap());
        assert_eq!(cube.weight_polytope().unwrap().vertices().len(), explicit.weight_polytope().unwrap().vertices().len());
    }

    #[test]
    fn descriptors_round_trip() {
        let desc: RepresentationDescriptor = serde_json::from_str(
            r#"{"family": {"type": "symmetric-power-sl2", "degree": 4}, "weights": {"x^4": [4]}}"#,
        )
        .unwrap();
        let rep = RepresentationSpec::from_descriptor(&desc).unwrap();
        assert_eq!(rep.rank(), 1);
        let bad: RepresentationDescriptor =
            serde_json::from_str(r#"{"family": {"type": "symmetric-power-sl2", "degree": 4}, "weights": {"x^4": [-4]}}"#)
                .unwrap();
        assert!(RepresentationSpec::from_descriptor(&bad).is_err());

        let v: VectorDescriptor = serde_json::from_str(r#"{"x^3*y": "1", "x*y^3": "-1/2+i"}"#).unwrap();
        let vec = WeightedVector::from_descriptor(rep.clone(), &v).unwrap();
        assert_eq!(vec.to_descriptor().unwrap(), v);

        let custom: RepresentationDescriptor = serde_json::from_str(
            r#"{"rank": 2, "basis": ["a", "b"], "weights": {"a": [1, 0], "b": [0, -1]}, "family": {"type": "weights"}}"#,
        )
        .unwrap();
        let rep = RepresentationSpec::from_descriptor(&custom).unwrap();
        assert_eq!(RepresentationSpec::from_descriptor(&rep.to_descriptor()).unwrap(), rep);

        let tensor: RepresentationDescriptor = serde_json::from_str(
            r#"{"family": {"type": "tensor-power", "q": 2, "base": {"family": {"type": "matrix-space-gl", "size": 3}}}}"#,
        )
        .unwrap();
        let rep = RepresentationSpec::from_descriptor(&tensor).unwrap();
        let v: VectorDescriptor =
            serde_json::from_str(r#"{"base": {"e_0_0": "1", "e_1_1": "1", "e_2_2": "1"}, "exponent": 2}"#).unwrap();
        let iq = WeightedVector::from_descriptor(rep, &v).unwrap();
        assert_eq!(iq.weight(&Cocharacter(vec![1, 0, -1])).unwrap(), -2);
    }
}
