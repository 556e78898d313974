use pairstab::binaryforms::{cross_check, sl2_pair_semistable, BinaryForm, P1Point};
use pairstab::matrix::ExactMatrix;
use pairstab::number::{rat, ratio};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = P1Point> {
    prop_oneof![
        Just(P1Point::infinity()),
        (-3i64..=3, 1i64..=2).prop_map(|(a, b)| P1Point::affine(ratio(a, b))),
    ]
}

fn form(max_degree: u32) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec((point(), 1u32..=2), 0..=max_degree as usize).prop_map(move |roots| {
        let mut total = 0;
        let kept: Vec<_> = roots
            .into_iter()
            .filter(|(_, m)| {
                total += m;
                total <= max_degree
            })
            .collect();
        BinaryForm::from_roots(kept)
    })
}

fn sl2() -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-3i64..=3, 4)
        .prop_filter("invertible", |e| e[0] * e[3] - e[1] * e[2] != 0)
        .prop_map(|e| {
            ExactMatrix::from_rational_rows(vec![vec![rat(e[0]), rat(e[1])], vec![rat(e[2]), rat(e[3])]]).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdict_is_mobius_invariant(f in form(3), g in form(5), sigma in sl2()) {
        let before = sl2_pair_semistable(&f, &g);
        let after = sl2_pair_semistable(&f.transform(&sigma).unwrap(), &g.transform(&sigma).unwrap());
        prop_assert_eq!(before.status(), after.status());
    }

    #[test]
    fn transform_matches_exact_action(g in form(4), sigma in sl2()) {
        prop_assume!(g.degree() > 0);
        let moved = g.transform(&sigma).unwrap();
        prop_assert_eq!(moved.to_vector(), g.to_vector().group_act(&sigma).unwrap());
    }

    #[test]
    fn factoring_round_trips(g in form(5)) {
        prop_assume!(g.degree() > 0);
        prop_assert_eq!(BinaryForm::from_poly(&g.expand()).unwrap(), g.clone());
        let json = serde_json::to_string(&g.to_json()).unwrap();
        prop_assert_eq!(BinaryForm::from_json(&serde_json::from_str(&json).unwrap()).unwrap(), g.clone());
        prop_assert_eq!(BinaryForm::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn oracle_agrees_with_torus_tests(f in form(3), g in form(4)) {
        prop_assert!(cross_check(&f, &g).is_ok());
    }
}

#[test]
fn irrational_roots_need_factored_input() {
    assert!(BinaryForm::parse("x^2 - 2*y^2").is_err());
    assert!(BinaryForm::parse("x^2 - 4*y^2").is_ok());
}
