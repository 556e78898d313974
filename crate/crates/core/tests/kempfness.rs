mod common;

use common::{sym, trivial_sl2};
use pairstab::kempfness::{
    distance_monotonicity_gap, energy, fs_distance, infimum_estimate, is_valid_distance, properness_modulo_probe,
    random_special_linear, random_unitary, seeded_rng,
};
use pairstab::lattice::convex_hull;
use pairstab::number::rat;
use pairstab::rep::WeightedVector;
use pairstab::stability::{k_stable_torus, Pair, Status};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn energy_is_left_unitary_invariant(seed in 0u64..10_000) {
        let p = Pair::new(sym("x^2 - x*y"), sym("x^3*y + 2*y^4")).unwrap();
        let mut rng = seeded_rng(seed);
        let sigma = random_special_linear(2, &mut rng);
        let k = random_unitary(2, &mut rng);
        let a = energy(&p, &sigma).unwrap();
        let b = energy(&p, &k.mul(&sigma)).unwrap();
        prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
        prop_assert!(is_valid_distance(fs_distance(&p, &sigma).unwrap()));
    }

    #[test]
    fn identity_pair_has_zero_energy(seed in 0u64..10_000) {
        let v = sym("x^3 - 3*x*y^2");
        let p = Pair::new(v.clone(), v).unwrap();
        let sigma = random_special_linear(2, &mut seeded_rng(seed));
        prop_assert!(energy(&p, &sigma).unwrap().abs() < 1e-12);
    }
}

#[test]
fn infimum_never_increases_with_iterations() {
    let p = Pair::new(sym("x*y"), sym("x^4 - x*y^3")).unwrap();
    let mut last = f64::INFINITY;
    for iterations in [5, 10, 20, 40, 80] {
        let est = infimum_estimate(&p, iterations, 3, 17).unwrap();
        assert!(est.best <= last + 1e-12, "{iterations}: {} > {last}", est.best);
        assert!(est.best_so_far.windows(2).all(|w| w[1] <= w[0]));
        last = est.best;
    }
}

#[test]
fn infimum_is_deterministic() {
    let p = Pair::new(trivial_sl2(), sym("x^2*y^2")).unwrap();
    let a = infimum_estimate(&p, 50, 4, 5).unwrap();
    let b = infimum_estimate(&p, 50, 4, 5).unwrap();
    assert_eq!(a.best.to_bits(), b.best.to_bits());
    assert_eq!(a.best_so_far, b.best_so_far);
}

#[test]
fn distance_is_minimized_at_the_same_element() {
    let p = Pair::new(sym("x^2 + y^2"), sym("x^4 - 2*x*y^3")).unwrap();
    assert!(distance_monotonicity_gap(&p, 200, 12).unwrap() <= 1e-12);
}

#[test]
fn properness_probe_follows_the_criterion() {
    let simplex = WeightedVector::identity(2).weight_polytope().unwrap();
    assert_eq!(simplex, convex_hull(&[vec![rat(-1)], vec![rat(1)]]).unwrap());

    let good = Pair::new(sym("x*y"), sym("x^4 + y^4")).unwrap();
    assert_eq!(k_stable_torus(&good, 2, &simplex).unwrap().status, Status::Stable);
    let report = properness_modulo_probe(&good, 2, 2, 8, 1).unwrap();
    assert_eq!(report.rays.iter().filter(|r| r.conjugation.is_none() && r.flagged).count(), 0);

    let bad = Pair::new(sym("x^2"), sym("x^2")).unwrap();
    assert_ne!(k_stable_torus(&bad, 2, &simplex).unwrap().status, Status::Stable);
    let report = properness_modulo_probe(&bad, 2, 2, 8, 1).unwrap();
    assert!(report.flagged > 0);

    // p_{v,I} = 2 log‖σ‖ − const for the trivial v: never decreasing toward t → 0.
    let base = Pair::new(trivial_sl2(), WeightedVector::identity(2)).unwrap();
    let report = properness_modulo_probe(&base, 1, 1, 4, 2).unwrap();
    assert!(report.rays.iter().all(|r| r.slope_reference <= 1e-9));
}
