//! The energy `p_{v,w}(σ) = log‖σw‖² − log‖σv‖²` and numerical probes of it.
//!
//! Everything here is double precision. Large group elements are handled
//! through `σ = exp(D)·k` with `D` real diagonal of trace zero and `k`
//! unitary: norms are unitarily invariant, so the energy only needs the
//! image under `k` and a log-sum-exp over the weights scaled by `exp(D)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Cocharacter, Torus};
use crate::matrix::{ComplexMatrix, Matrix};
use crate::rep::{FloatImage, WeightedVector};
use crate::stability::Pair;

/// Default descent floor; a best value below it is reported as divergence.
pub const DIVERGENCE_FLOOR: f64 = -1.0e4;

fn group_size(p: &Pair) -> Result<usize> {
    for x in [&p.v, &p.w] {
        if x.rep().group_size().is_none() {
            return Err(Error::NoGroupAction(x.rep().family().tag().into()));
        }
    }
    Ok(p.v.rep().group_size().expect("checked"))
}

fn check_invertible(sigma: &ComplexMatrix) -> Result<()> {
    let det = sigma.determinant();
    if !(det.norm() > 1e-300) || !det.is_finite() {
        return Err(Error::domain("singular matrix"));
    }
    Ok(())
}

fn images(p: &Pair, sigma: &ComplexMatrix) -> Result<(FloatImage, FloatImage)> {
    check_invertible(sigma)?;
    Ok((p.v.act_complex(sigma)?, p.w.act_complex(sigma)?))
}

/// `p_{v,w}(σ)`.
pub fn energy(p: &Pair, sigma: &ComplexMatrix) -> Result<f64> {
    group_size(p)?;
    let (iv, iw) = images(p, sigma)?;
    Ok(iw.log_norm_sqr() - iv.log_norm_sqr())
}

/// Fubini–Study distance between `σ[v,w]` and `σ[v,0]` in `P(V ⊕ W)`.
///
/// Computed from the orthogonal decomposition of `(σv, σw)` against
/// `(σv, 0)`, with plain (non-logarithmic) sums.
pub fn fs_distance(p: &Pair, sigma: &ComplexMatrix) -> Result<f64> {
    group_size(p)?;
    let (iv, iw) = images(p, sigma)?;
    let along = iv.inner(&iv)?.norm() / iv.norm_sqr().sqrt();
    let total = iv.norm_sqr() + iw.norm_sqr();
    let perp = (total - along * along).max(0.0).sqrt();
    if !perp.is_finite() || !along.is_finite() {
        return Err(Error::domain("norms overflow double precision"));
    }
    Ok(perp.atan2(along))
}

/// Fubini–Study distance between `σ[v,w]` and `τ[v,0]`.
pub fn fs_distance_between(p: &Pair, sigma: &ComplexMatrix, tau: &ComplexMatrix) -> Result<f64> {
    group_size(p)?;
    let (sv, sw) = images(p, sigma)?;
    let tv = p.v.act_complex(tau)?;
    let cos = sv.inner(&tv)?.norm() / ((sv.norm_sqr() + sw.norm_sqr()).sqrt() * tv.norm_sqr().sqrt());
    Ok(cos.clamp(0.0, 1.0).acos())
}

fn log_norms_on_ray(p: &Pair, u: &Cocharacter) -> Result<impl Fn(f64) -> f64> {
    let n = group_size(p)?;
    let torus = p.torus();
    if u.is_trivial() {
        return Err(Error::domain("ray profiles need a nontrivial cocharacter"));
    }
    let exps = torus.diagonal_exponents(u)?;
    let id = Matrix::identity(n);
    let (iv, iw) = images(p, &id)?;
    Ok(move |log_t: f64| {
        let d: Vec<f64> = exps.iter().map(|&e| e as f64 * log_t).collect();
        iw.log_norm_sqr_after(&d) - iv.log_norm_sqr_after(&d)
    })
}

/// `(t, p_{v,w}(λ(t)))` for each `t` of the grid.
pub fn ray_profile(p: &Pair, u: &Cocharacter, t_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if t_grid.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::domain("ray grid must be positive"));
    }
    let f = log_norms_on_ray(p, u)?;
    Ok(t_grid.iter().map(|&t| (t, f(t.ln()))).collect())
}

/// Same as [`ray_profile`] with the grid given by `log t`, for `t` below `f64` range.
pub fn ray_profile_log(p: &Pair, u: &Cocharacter, log_t: &[f64]) -> Result<Vec<(f64, f64)>> {
    let f = log_norms_on_ray(p, u)?;
    Ok(log_t.iter().map(|&s| (s, f(s))).collect())
}

/// Evenly spaced `log t` values on `[from, to]`.
pub fn log_grid(from: f64, to: f64, points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points).map(|i| from + (to - from) * i as f64 / (points - 1) as f64).collect()
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxy: f64 = samples.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = samples.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Slope of the energy against `log t` fitted over `log t ∈ [−60, −20]`.
pub fn ray_slope(p: &Pair, u: &Cocharacter) -> Result<f64> {
    Ok(fit_slope(&ray_profile_log(p, u, &log_grid(-60.0, -20.0, 41))?))
}

/// `2(w_λ(w) − w_λ(v))`, the slope predicted by the weights.
pub fn predicted_slope(p: &Pair, u: &Cocharacter) -> Result<f64> {
    Ok(2.0 * (p.w.weight(u)? - p.v.weight(u)?) as f64)
}

/// A recorded sequence of energies along a ray.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnergyProbe {
    pub group_dim: usize,
    pub direction: Option<Vec<i64>>,
    pub samples: Vec<ProbeSample>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeSample {
    pub log_t: f64,
    pub energy: f64,
}

impl EnergyProbe {
    pub fn along_ray(p: &Pair, u: &Cocharacter, log_t: &[f64]) -> Result<Self> {
        let samples = ray_profile_log(p, u, log_t)?
            .into_iter()
            .map(|(log_t, energy)| ProbeSample { log_t, energy })
            .collect();
        Ok(EnergyProbe { group_dim: group_size(p)?, direction: Some(u.0.clone()), samples })
    }

    pub fn slope(&self) -> f64 {
        fit_slope(&self.samples.iter().map(|s| (s.log_t, s.energy)).collect::<Vec<_>>())
    }
}

/// Haar-distributed unitary matrix from QR of a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                .collect()
        })
        .collect();
    for j in 0..n {
        for i in 0..j {
            let proj: Complex64 = (0..n).map(|r| cols[i][r].conj() * cols[j][r]).sum();
            for r in 0..n {
                let c = cols[i][r];
                cols[j][r] -= proj * c;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    let rows = (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

/// Random element of `SL(n, C)` with Gaussian entries, rescaled to determinant one.
pub fn random_special_linear<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let rows: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                .collect()
        })
        .collect();
    let m = Matrix::from_rows(rows).expect("square");
    let det = m.determinant();
    m.scale(det.powf(-1.0 / n as f64))
}

/// Compass search state for `σ = exp(D)·k`.
struct Descent<'a> {
    pair: &'a Pair,
    n: usize,
    d: Vec<f64>,
    k: ComplexMatrix,
    iv: FloatImage,
    iw: FloatImage,
    value: f64,
}

impl<'a> Descent<'a> {
    fn new(pair: &'a Pair, n: usize, k: ComplexMatrix) -> Result<Self> {
        let (iv, iw) = images(pair, &k)?;
        let d = vec![0.0; n];
        let value = iw.log_norm_sqr_after(&d) - iv.log_norm_sqr_after(&d);
        Ok(Descent { pair, n, d, k, iv, iw, value })
    }

    fn eval_d(&self, d: &[f64]) -> f64 {
        self.iw.log_norm_sqr_after(d) - self.iv.log_norm_sqr_after(d)
    }

    fn try_diagonal(&mut self, step: f64) -> bool {
        for i in 0..self.n - 1 {
            for sign in [1.0, -1.0] {
                let mut d = self.d.clone();
                d[i] += sign * step;
                d[i + 1] -= sign * step;
                let e = self.eval_d(&d);
                if e < self.value {
                    self.d = d;
                    self.value = e;
                    return true;
                }
            }
        }
        false
    }

    fn try_rotation(&mut self, step: f64) -> Result<bool> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for phase in [false, true] {
                    for sign in [1.0, -1.0] {
                        let (c, s) = ((sign * step).cos(), (sign * step).sin());
                        let mut g = Matrix::identity(n);
                        g.set(i, i, Complex64::new(c, 0.0));
                        g.set(j, j, Complex64::new(c, 0.0));
                        if phase {
                            g.set(i, j, Complex64::new(0.0, s));
                            g.set(j, i, Complex64::new(0.0, s));
                        } else {
                            g.set(i, j, Complex64::new(-s, 0.0));
                            g.set(j, i, Complex64::new(s, 0.0));
                        }
                        let k = g.mul(&self.k);
                        let (iv, iw) = images(self.pair, &k)?;
                        let e = iw.log_norm_sqr_after(&self.d) - iv.log_norm_sqr_after(&self.d);
                        if e < self.value {
                            self.k = k;
                            self.iv = iv;
                            self.iw = iw;
                            self.value = e;
                            return Ok(true);
                        }
                    }
                }
            }
        }
        Ok(false)
    }

    /// Runs at most `iterations` sweeps; stops early once both steps are negligible.
    fn run(&mut self, iterations: usize, floor: f64) -> Result<usize> {
        let (mut step_d, mut step_k) = (0.5, 0.5);
        for it in 0..iterations {
            let moved_d = self.try_diagonal(step_d);
            let moved_k = if self.n > 1 { self.try_rotation(step_k)? } else { false };
            step_d = if moved_d { step_d * 2.0 } else { step_d / 2.0 };
            step_k = if moved_k { (step_k * 2.0).min(1.0) } else { step_k / 2.0 };
            if self.value < floor || (step_d < 1e-12 && step_k < 1e-12) {
                return Ok(it + 1);
            }
        }
        Ok(iterations)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RestartRecord {
    pub restart: usize,
    pub start: f64,
    pub end: f64,
    pub sweeps: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfimumEstimate {
    /// Smallest energy seen; an upper bound for the infimum over the group.
    pub best: f64,
    /// Whether the best value fell below the divergence floor.
    pub diverged: bool,
    /// Best value after each restart, in restart order.
    pub best_so_far: Vec<f64>,
    pub restarts: Vec<RestartRecord>,
}

/// Multi-start compass descent of the energy over the group.
///
/// Restart 0 starts at the identity; the others at Haar-random unitaries
/// drawn from the seed and the restart index.
pub fn infimum_estimate(p: &Pair, iterations: usize, restarts: usize, seed: u64) -> Result<InfimumEstimate> {
    infimum_estimate_with_floor(p, iterations, restarts, seed, DIVERGENCE_FLOOR)
}

pub fn infimum_estimate_with_floor(
    p: &Pair,
    iterations: usize,
    restarts: usize,
    seed: u64,
    floor: f64,
) -> Result<InfimumEstimate> {
    let n = group_size(p)?;
    let records = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| -> Result<RestartRecord> {
            let k = if r == 0 {
                Matrix::identity(n)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(r as u64);
                random_unitary(n, &mut rng)
            };
            let mut descent = Descent::new(p, n, k)?;
            let start = descent.value;
            let sweeps = descent.run(iterations, floor)?;
            Ok(RestartRecord { restart: r, start, end: descent.value, sweeps })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = f64::INFINITY;
    let best_so_far = records
        .iter()
        .map(|r| {
            best = best.min(r.end).min(r.start);
            best
        })
        .collect();
    Ok(InfimumEstimate { best, diverged: best < floor, best_so_far, restarts: records })
}

/// Hilbert–Schmidt norm of `diag(a, 1/a)` equal to `10^s`.
fn diagonal_for_norm(log10_norm: f64) -> f64 {
    let x = 10f64.powf(2.0 * log10_norm).max(2.0);
    ((x + (x * x - 4.0).max(0.0).sqrt()) / 2.0).sqrt()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JBoundReport {
    /// Largest `log‖σv‖ − deg·log‖σ‖` seen.
    pub worst: f64,
    /// Maximum per decade of `log₁₀‖σ‖`, lowest decade first.
    pub decade_max: Vec<f64>,
    pub samples: usize,
}

impl JBoundReport {
    pub fn final_decade_max(&self) -> f64 {
        *self.decade_max.last().unwrap_or(&f64::NEG_INFINITY)
    }

    /// Maximum over every decade but the last.
    pub fn early_max(&self) -> f64 {
        let k = self.decade_max.len().saturating_sub(1);
        self.decade_max[..k].iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// The last decade neither rises above the earlier ones nor falls short
    /// of the overall maximum, both by more than `tolerance`.
    pub fn no_drift(&self, tolerance: f64) -> bool {
        let last = self.final_decade_max();
        last <= self.early_max() + tolerance && self.worst - last <= tolerance
    }
}

/// Samples `σ = k₁·exp(D)·k₂` with `log₁₀‖σ‖` uniform on `[0, 6]` and records
/// `log‖σv‖ − deg·log‖σ‖` (Hilbert–Schmidt norm on `σ`).
pub fn j_bound_check(v: &WeightedVector, deg: u64, samples: usize, seed: u64) -> Result<JBoundReport> {
    const DECADES: usize = 6;
    let n = v
        .rep()
        .group_size()
        .ok_or_else(|| Error::NoGroupAction(v.rep().family().tag().into()))?;
    let per_sample = (0..samples.max(1))
        .into_par_iter()
        .map(|i| -> Result<(usize, f64)> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let s: f64 = Uniform::new(0.0, DECADES as f64).expect("range").sample(&mut rng);
            let d = if n == 2 {
                let a = diagonal_for_norm(s).ln();
                vec![a, -a]
            } else {
                // Random traceless direction rescaled to the target norm.
                let mut d: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let mean = d.iter().sum::<f64>() / n as f64;
                d.iter_mut().for_each(|x| *x -= mean);
                scale_to_norm(&mut d, s);
                d
            };
            let log_sigma = 0.5 * crate::rep::log_sum_exp(&d.iter().map(|x| 2.0 * x).collect::<Vec<_>>());
            let k = random_unitary(n, &mut rng);
            let image = v.act_complex(&k)?;
            let value = 0.5 * image.log_norm_sqr_after(&d) - deg as f64 * log_sigma;
            let decade = ((log_sigma / std::f64::consts::LN_10).floor().max(0.0) as usize).min(DECADES - 1);
            Ok((decade, value))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut decade_max = vec![f64::NEG_INFINITY; DECADES];
    for (d, x) in &per_sample {
        decade_max[*d] = decade_max[*d].max(*x);
    }
    let worst = decade_max.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(JBoundReport { worst, decade_max, samples: per_sample.len() })
}

/// Scales a traceless direction so `‖exp(D)‖_HS = 10^s` (bisection on the scale).
fn scale_to_norm(d: &mut [f64], s: f64) {
    let target = s * std::f64::consts::LN_10;
    let log_hs = |c: f64| 0.5 * crate::rep::log_sum_exp(&d.iter().map(|x| 2.0 * c * x).collect::<Vec<_>>());
    let (mut lo, mut hi) = (0.0, 1.0);
    while log_hs(hi) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if log_hs(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = 0.5 * (lo + hi);
    d.iter_mut().for_each(|x| *x *= c);
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RayRecord {
    pub ray: Vec<i64>,
    /// Index of the unitary conjugation, `None` for diagonal rays.
    pub conjugation: Option<usize>,
    pub slope_w: f64,
    pub slope_reference: f64,
    /// `p_{v,I^q} → +∞` along the ray while `p_{v,w}` stays bounded above.
    pub flagged: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropernessReport {
    pub rays: Vec<RayRecord>,
    pub flagged: usize,
}

/// Primitive cocharacters of the torus with entries in `[-bound, bound]`.
pub fn small_cocharacters(torus: Torus, bound: i64) -> Vec<Cocharacter> {
    let rank = torus.rank();
    let mut out = Vec::new();
    let mut current = vec![-bound; rank];
    loop {
        let u = Cocharacter(current.clone());
        let primitive = current.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1;
        if primitive && torus.check_cocharacter(&u).is_ok() {
            out.push(u);
        }
        let mut i = 0;
        loop {
            if i == rank {
                return out;
            }
            if current[i] < bound {
                current[i] += 1;
                break;
            }
            current[i] = -bound;
            i += 1;
        }
    }
}

/// Compares `p_{v,w}` with `p_{v,I^q}` along torus rays and `rays` conjugated rays.
pub fn properness_modulo_probe(p: &Pair, deg: u64, q: u32, rays: usize, seed: u64) -> Result<PropernessReport> {
    let n = group_size(p)?;
    let torus = p.torus();
    let identity_power = WeightedVector::tensor_power(WeightedVector::identity(n), q)?;
    let reference = Pair::new(p.v.clone(), identity_power)?;
    let _ = deg;
    let grid = log_grid(-60.0, -20.0, 21);
    let slope = |pair: &Pair, k: &ComplexMatrix, u: &Cocharacter| -> Result<f64> {
        let (iv, iw) = images(pair, k)?;
        let exps = torus.diagonal_exponents(u)?;
        let samples: Vec<(f64, f64)> = grid
            .iter()
            .map(|&s| {
                let d: Vec<f64> = exps.iter().map(|&e| e as f64 * s).collect();
                (s, iw.log_norm_sqr_after(&d) - iv.log_norm_sqr_after(&d))
            })
            .collect();
        Ok(fit_slope(&samples))
    };
    let torus_rays = small_cocharacters(torus, 2);
    let mut jobs: Vec<(Cocharacter, Option<usize>)> = torus_rays.iter().map(|u| (u.clone(), None)).collect();
    for r in 0..rays {
        let u = torus_rays[r % torus_rays.len()].clone();
        jobs.push((u, Some(r)));
    }
    let records = jobs
        .into_par_iter()
        .map(|(u, conj)| -> Result<RayRecord> {
            let k = match conj {
                None => Matrix::identity(n),
                Some(r) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(r as u64 + 1);
                    random_unitary(n, &mut rng)
                }
            };
            // λ(t)·k has the energies of the conjugated subgroup k⁻¹λ(t)k.
            let slope_w = slope(p, &k, &u)?;
            let slope_reference = slope(&reference, &k, &u)?;
            let flagged = slope_reference < -0.5 && slope_w > -0.5;
            Ok(RayRecord { ray: u.0, conjugation: conj, slope_w, slope_reference, flagged })
        })
        .collect::<Result<Vec<_>>>()?;
    let flagged = records.iter().filter(|r| r.flagged).count();
    Ok(PropernessReport { rays: records, flagged })
}

/// Largest `d(σ[v,w], σ[v,0]) − d(σ[v,w], τ[v,0])` over random `σ, τ`; should be `≤ 0`.
pub fn distance_monotonicity_gap(p: &Pair, samples: usize, seed: u64) -> Result<f64> {
    let n = group_size(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..samples {
        let sigma = random_special_linear(n, &mut rng);
        let tau = random_special_linear(n, &mut rng);
        let own = fs_distance(p, &sigma)?;
        let other = fs_distance_between(p, &sigma, &tau)?;
        worst = worst.max(own - other);
    }
    Ok(worst)
}

/// Whether a distance lies in `(0, π/2]`.
pub fn is_valid_distance(d: f64) -> bool {
    d > 0.0 && d <= PI / 2.0 + 1e-15
}

/// Seeded RNG for callers that build their own samples.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
