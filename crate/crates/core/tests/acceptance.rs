//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pairstab::binaryforms::{
    binary_destabilizer, cross_check, exhaustive_cross_check, sl2_pair_semistable, standard_points, BinaryForm,
};
use pairstab::kempfness::{
    energy, fs_distance, infimum_estimate, predicted_slope, random_special_linear, ray_slope, j_bound_check,
};
use pairstab::lattice::{min_scale_containment, Cocharacter, Torus};
use pairstab::number::{gauss, rat};
use pairstab::planecurves::{
    adjugate_dual_conic, along_from_weights, brute_force_weight, chow_form, dual_degree, hyperdiscriminant,
    incidence_holds, k_stability_along, random_curve_with_points, PlaneCurve,
};
use pairstab::poly::RatPoly;
use pairstab::rep::{RepresentationSpec, RowKind, WeightedVector};
use pairstab::stability::{destabilizer, verify_weight_by_limit, weight, Pair};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn form(s: &str) -> BinaryForm {
    BinaryForm::parse(s).unwrap()
}

fn trivial_sl2() -> WeightedVector {
    WeightedVector::new(RepresentationSpec::trivial(Torus::Sl2), [(vec![], gauss(rat(1)))].into()).unwrap()
}

fn constant_form() -> BinaryForm {
    BinaryForm::with_scale([], rat(1)).unwrap()
}

fn sym(poly: &str) -> WeightedVector {
    let p = RatPoly::parse(poly, &["x", "y"]).unwrap();
    let rep = RepresentationSpec::symmetric_power_sl2(p.degree().unwrap());
    WeightedVector::from_poly(rep, &p).unwrap()
}

fn ternary(poly: &str) -> WeightedVector {
    let p = RatPoly::parse(poly, &["x", "y", "z"]).unwrap();
    let rep = RepresentationSpec::polynomial_space(3, vec![RowKind::Point], p.degree().unwrap());
    WeightedVector::from_poly(rep, &p).unwrap()
}

fn sl2_pair() -> Pair {
    Pair::new(sym("x^2 + 3*x*y"), sym("x^4 - 2*x*y^3 + y^4")).unwrap()
}

fn sl3_pair() -> Pair {
    Pair::new(WeightedVector::identity(3), ternary("x^2 + y*z + 2*x*z")).unwrap()
}

fn binary_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let report = exhaustive_cross_check(&standard_points(), 4);
    let elapsed = start.elapsed();
    let pass = report.pairs >= 300
        && report.agreements == report.pairs
        && report.disagreements.is_empty()
        && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "{}/{} pairs agree ({} semistable) in {:.1}s",
            report.agreements,
            report.pairs,
            report.semistable_pairs,
            elapsed.as_secs_f64()
        ),
    )
}

fn classical_reduction() -> Outcome {
    let v = trivial_sl2();
    let mut notes = Vec::new();
    let mut pass = true;
    for quartic in ["x^3*y", "x^4"] {
        let pair = Pair::new(v.clone(), sym(quartic)).unwrap();
        let ok = match destabilizer(&pair).unwrap() {
            Some(u) => {
                let ww = weight(&u, &pair.w).unwrap();
                let (limit_exp, _) = verify_weight_by_limit(&u, &pair.w).unwrap();
                let oracle = sl2_pair_semistable(&constant_form(), &form(quartic));
                notes.push(format!("{quartic}: λ = {u}, w_λ = {ww}"));
                ww > 0 && limit_exp == ww && weight(&u, &v).unwrap() == 0 && !oracle.semistable
            }
            None => false,
        };
        pass &= ok;
    }
    for quartic in ["x^2*y^2", "x*y*(x-y)*(x+y)"] {
        let f = form(quartic);
        let oracle = sl2_pair_semistable(&constant_form(), &f);
        let agrees = cross_check(&constant_form(), &f).is_ok();
        let none = binary_destabilizer(&constant_form(), &f).unwrap().is_none();
        pass &= oracle.semistable && agrees && none;
        notes.push(format!("{quartic}: {:?}", oracle.status()));
    }
    outcome(pass, notes.join("; "))
}

fn kempf_ness_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (pair, n) in [(sl2_pair(), 2), (sl3_pair(), 3)] {
        for _ in 0..100 {
            let sigma = random_special_linear(n, &mut rng);
            let e = energy(&pair, &sigma).unwrap();
            let d = fs_distance(&pair, &sigma).unwrap();
            worst = worst.max((e - (d.tan() * d.tan()).ln()).abs());
        }
    }
    outcome(worst < 1e-9, format!("max |energy − log tan² d| = {worst:.2e} over 200 elements"))
}

fn ray_asymptotics() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_rel: f64 = 0.0;
    let mut pass = true;
    for i in 0..20 {
        let (pair, u) = if i % 2 == 0 {
            let a = loop {
                let a = rng.random_range(-3..=3i64);
                if a != 0 {
                    break a;
                }
            };
            (sl2_pair(), Cocharacter(vec![a]))
        } else {
            let (a, b) = loop {
                let (a, b) = (rng.random_range(-3..=3i64), rng.random_range(-3..=3i64));
                if (a, b) != (0, 0) {
                    break (a, b);
                }
            };
            (sl3_pair(), Cocharacter(vec![a, b, -a - b]))
        };
        let fitted = ray_slope(&pair, &u).unwrap();
        let predicted = predicted_slope(&pair, &u).unwrap();
        let err = (fitted - predicted).abs();
        let rel = if predicted == 0.0 { err } else { err / predicted.abs() };
        worst_rel = worst_rel.max(rel);
        pass &= rel <= 0.01;
    }
    outcome(
        pass,
        format!("20 rays, worst relative slope error {worst_rel:.2e}, {:.2}s", start.elapsed().as_secs_f64()),
    )
}

fn infimum_consistency() -> Outcome {
    let stable = [
        ("1", "x*y*(x-y)*(x+y)"),
        ("1", "x*y*(x-y)"),
        ("x", "x*y*(x-y)*(x+y)*(x-2*y)"),
        ("x*y", "x*y*(x-y)*(x+y)*(x-2*y)*(x+2*y)"),
        ("1", "x^2*y*(x-y)*(x+y)*(x-2*y)"),
    ];
    let unstable = [("1", "x^3*y"), ("1", "x^4"), ("x^2", "y^4"), ("x", "x^3*y"), ("x*y", "x^4")];
    let to_pair = |f: &BinaryForm, g: &BinaryForm| {
        let v = if f.degree() == 0 { trivial_sl2() } else { f.to_vector() };
        Pair::new(v, g.to_vector()).unwrap()
    };
    let parse = |s: &str| if s == "1" { constant_form() } else { form(s) };
    let mut pass = true;
    let mut worst_change: f64 = 0.0;
    for (f, g) in stable {
        let (f, g) = (parse(f), parse(g));
        pass &= sl2_pair_semistable(&f, &g).numerically_strict;
        let p = to_pair(&f, &g);
        let a = infimum_estimate(&p, 300, 3, 2).unwrap().best;
        let b = infimum_estimate(&p, 600, 3, 2).unwrap().best;
        worst_change = worst_change.max((a - b).abs());
    }
    pass &= worst_change < 1e-4;
    let mut highest_unstable = f64::NEG_INFINITY;
    for (f, g) in unstable {
        let (f, g) = (parse(f), parse(g));
        let certified = binary_destabilizer(&f, &g).unwrap().is_some();
        let est = infimum_estimate(&to_pair(&f, &g), 300, 3, 2).unwrap();
        let last = *est.best_so_far.last().unwrap();
        highest_unstable = highest_unstable.max(last);
        pass &= certified && last < -1e3;
    }
    outcome(
        pass,
        format!("stable: max change {worst_change:.2e} on doubling; unstable: best-so-far ≤ {highest_unstable:.3e}"),
    )
}

fn dual_curve_degrees() -> Outcome {
    let mut pass = true;
    let mut curves = 0;
    let mut points = 0;
    for d in [2u32, 3] {
        for seed in 0..10 {
            let (c, pts) = match random_curve_with_points(d, 10, 100 + seed) {
                Ok(x) => x,
                Err(_) => {
                    pass = false;
                    continue;
                }
            };
            let delta = match hyperdiscriminant(&c) {
                Ok(delta) => delta,
                Err(_) => {
                    pass = false;
                    continue;
                }
            };
            pass &= delta.degree() == Some(d * (d - 1)) && dual_degree(&c) == d * (d - 1);
            if d == 2 {
                pass &= adjugate_dual_conic(&c).map_or(false, |a| a == delta);
            }
            let pts = &pts[..10];
            pass &= incidence_holds(&c, &delta, pts);
            curves += 1;
            points += pts.len();
        }
    }
    outcome(pass, format!("{curves} curves, {points} tangent lines on their duals"))
}

fn degree_of_symmetric_powers() -> Outcome {
    let reference = WeightedVector::identity(2).weight_polytope().unwrap();
    let degs: Vec<u64> = (1..=8)
        .map(|d| {
            let rep = RepresentationSpec::symmetric_power_sl2(d);
            min_scale_containment(&rep.full_weight_polytope().unwrap(), &reference).unwrap()
        })
        .collect();
    let pass = degs.iter().zip(1..).all(|(&k, d)| k == d);
    outcome(pass, format!("deg(Sym^d) for d = 1..8: {degs:?}"))
}

fn j_bound() -> Outcome {
    let v = sym("x^4 - x*y^3 + 2*x^2*y^2");
    let report = j_bound_check(&v, 4, 10_000, 8).unwrap();
    let covered = report.decade_max.iter().all(|x| x.is_finite());
    let pass = covered && report.no_drift(0.1);
    outcome(
        pass,
        format!(
            "overall max {:.4}, final-decade max {:.4}, earlier max {:.4}",
            report.worst,
            report.final_decade_max(),
            report.early_max()
        ),
    )
}

fn k_stability_consistency() -> Outcome {
    let conic = PlaneCurve::parse("x*z - y^2").unwrap();
    let chow_explicit = chow_form(&conic).normalized().pow(dual_degree(&conic));
    let dual_explicit = hyperdiscriminant(&conic).unwrap().pow(2 * conic.degree());
    let r = (2 * conic.degree() * dual_degree(&conic)) as i64;
    let lambdas: [[i64; 3]; 10] = [
        [1, 0, -1],
        [1, -1, 0],
        [0, 1, -1],
        [2, -1, -1],
        [1, 1, -2],
        [3, -1, -2],
        [1, 2, -3],
        [2, 0, -2],
        [3, -3, 0],
        [4, -1, -3],
    ];
    let mut pass = true;
    let mut tally = std::collections::BTreeMap::new();
    for l in lambdas {
        for sign in [1, -1] {
            let u = Cocharacter(l.iter().map(|x| sign * x).collect());
            let fast = k_stability_along(&conic, &u).unwrap();
            let brute = along_from_weights(
                &u,
                r * u.0.iter().min().unwrap(),
                brute_force_weight(&chow_explicit, 2, &u),
                brute_force_weight(&dual_explicit, 1, &u),
            );
            pass &= fast == brute;
            *tally.entry(format!("{:?}", fast.verdict)).or_insert(0) += 1;
        }
    }
    outcome(pass, format!("20 cocharacters agree with brute force: {tally:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("binary oracle equivalence", binary_oracle_equivalence),
        ("classical quartics", classical_reduction),
        ("Kempf-Ness identity", kempf_ness_identity),
        ("ray asymptotics", ray_asymptotics),
        ("infimum consistency", infimum_consistency),
        ("dual curve degrees", dual_curve_degrees),
        ("deg(Sym^d)", degree_of_symmetric_powers),
        ("J-bound", j_bound),
        ("K-stability criterion", k_stability_consistency),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let mark = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} [{mark}] {name}: {} ({:.1}s)",
            i + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
        if !result.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
