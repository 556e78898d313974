mod common;

use common::{sym, sym_poly, sym_vector, trivial_sl2};
use pairstab::lattice::Cocharacter;
use pairstab::rep::WeightedVector;
use pairstab::stability::{
    destabilizer, group_verdict_sampled, pair_semistable_torus, pair_stable_torus, verify_weight_by_limit, weight,
    Pair, Status,
};
use proptest::prelude::*;

fn ternary_vec(coeffs: &[i64]) -> WeightedVector {
    let monos = ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"];
    let text: Vec<String> = coeffs
        .iter()
        .zip(monos)
        .filter(|(c, _)| **c != 0)
        .map(|(c, m)| format!("({c})*{m}"))
        .collect();
    common::ternary(&text.join(" + "), pairstab::rep::RowKind::Point)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn weight_equals_limit_exponent(p in sym_poly(6), u in -5i64..=5) {
        let v = sym_vector(&p);
        let u = Cocharacter(vec![u]);
        let (k, limit) = verify_weight_by_limit(&u, &v).unwrap();
        prop_assert_eq!(k, weight(&u, &v).unwrap());
        prop_assert_eq!(weight(&u, &limit).unwrap(), k);
    }

    #[test]
    fn ternary_weight_equals_limit_exponent(
        c in prop::collection::vec(-2i64..=2, 6).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0)),
        a in -3i64..=3,
        b in -3i64..=3,
    ) {
        let v = ternary_vec(&c);
        let u = Cocharacter(vec![a, b, -a - b]);
        let (k, _) = verify_weight_by_limit(&u, &v).unwrap();
        prop_assert_eq!(k, weight(&u, &v).unwrap());
    }

    #[test]
    fn torus_verdicts_are_consistent(p in sym_poly(4), q in sym_poly(6)) {
        let pair = Pair::new(sym_vector(&p), sym_vector(&q)).unwrap();
        let semi = pair_semistable_torus(&pair).unwrap();
        let stable = pair_stable_torus(&pair).unwrap();
        if stable.status == Status::Stable {
            prop_assert!(semi.status.is_semistable());
        }
        // No sampled direction contradicts the exact verdict.
        for u in (-12i64..=12).filter(|&u| u != 0) {
            let u = Cocharacter(vec![u]);
            let bad = weight(&u, &pair.w).unwrap() > weight(&u, &pair.v).unwrap();
            if semi.status.is_semistable() {
                prop_assert!(!bad);
            }
        }
        match destabilizer(&pair).unwrap() {
            Some(u) => {
                prop_assert_eq!(semi.status, Status::Unstable);
                prop_assert!(weight(&u, &pair.w).unwrap() > weight(&u, &pair.v).unwrap());
            }
            None => prop_assert!(semi.status.is_semistable()),
        }
    }
}

#[test]
fn sampled_directions_in_rank_two() {
    // SL(3): v = I, w = x^2 + y*z. 1000 directions never contradict the exact verdict.
    let pair = Pair::new(WeightedVector::identity(3), ternary_vec(&[1, 0, 0, 0, 0, 1])).unwrap();
    let semi = pair_semistable_torus(&pair).unwrap();
    let mut seen = 0;
    for a in -15i64..=15 {
        for b in -15i64..=15 {
            let u = Cocharacter(vec![a, b, -a - b]);
            if u.is_trivial() {
                continue;
            }
            seen += 1;
            let bad = weight(&u, &pair.w).unwrap() > weight(&u, &pair.v).unwrap();
            assert!(!(bad && semi.status.is_semistable()), "{u}");
        }
    }
    assert!(seen >= 900);
    if semi.status == Status::Unstable {
        let u = semi.witness_cocharacter().unwrap();
        assert!(weight(&u, &pair.w).unwrap() > weight(&u, &pair.v).unwrap());
    }
}

#[test]
fn sampled_group_search_finds_hidden_violation() {
    // (x^2, y·(x − y)^3): the violation sits at [1:1], invisible to the diagonal torus.
    let pair = Pair::new(sym("x^2"), sym("y*(x - y)^3")).unwrap();
    assert!(pair_semistable_torus(&pair).unwrap().status.is_semistable());
    let verdict = group_verdict_sampled(&pair, 200, 3).unwrap();
    assert_eq!(verdict.status, Status::Unstable);
    assert!(verdict.certificate.starts_with("sample "));
}

#[test]
fn sampled_group_search_on_stable_pair() {
    let pair = Pair::new(trivial_sl2(), sym("x*y*(x - y)*(x + y)")).unwrap();
    let verdict = group_verdict_sampled(&pair, 1000, 1).unwrap();
    assert_eq!(verdict.status, Status::UnknownSampled);
    assert!(verdict.witness.is_none());
}

#[test]
fn unstable_at_sample_zero() {
    let pair = Pair::new(trivial_sl2(), sym("x^3*y")).unwrap();
    let verdict = group_verdict_sampled(&pair, 50, 9).unwrap();
    assert!(verdict.certificate.starts_with("sample 0"));
}
