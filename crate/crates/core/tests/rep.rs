mod common;

use common::{invertible, sym, sym_poly, sym_vector, ternary};
use pairstab::lattice::Cocharacter;
use pairstab::number::{gauss, rat};
use pairstab::rep::{RepresentationSpec, RowKind, WeightedVector};
use pairstab::stability::weight;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn binary_action_composes(p in sym_poly(4), s in invertible(2), t in invertible(2)) {
        let v = sym_vector(&p);
        let left = v.group_act(&t).unwrap().group_act(&s).unwrap();
        prop_assert_eq!(left, v.group_act(&s.mul(&t)).unwrap());
    }

    #[test]
    fn ternary_actions_compose(s in invertible(3), t in invertible(3)) {
        for v in [
            ternary("x^2 + 2*y*z - x*z", RowKind::Point),
            ternary("u*v - w^2", RowKind::Covector),
            WeightedVector::identity(3),
        ] {
            let left = v.group_act(&t).unwrap().group_act(&s).unwrap();
            prop_assert_eq!(left, v.group_act(&s.mul(&t)).unwrap());
        }
    }

    #[test]
    fn tensor_and_power_weights_scale(p in sym_poly(4), q in 1u32..5, u in -4i64..=4) {
        let v = sym_vector(&p);
        let u = Cocharacter(vec![u]);
        let w = weight(&u, &v).unwrap();
        let tensor = WeightedVector::tensor_power(v.clone(), q).unwrap();
        prop_assert_eq!(weight(&u, &tensor).unwrap(), q as i64 * w);
        let power = WeightedVector::polynomial_power(v, q).unwrap();
        prop_assert_eq!(weight(&u, &power).unwrap(), q as i64 * w);
    }

    #[test]
    fn lazy_power_matches_expansion(p in sym_poly(3), q in 1u32..4, s in invertible(2)) {
        let lazy = WeightedVector::polynomial_power(sym_vector(&p), q).unwrap();
        let expanded = sym_vector(&p.pow(q));
        prop_assert_eq!(lazy.coefficients().unwrap(), expanded.coefficients().unwrap());
        let moved = lazy.group_act(&s).unwrap();
        prop_assert_eq!(moved.coefficients().unwrap(), expanded.group_act(&s).unwrap().coefficients().unwrap());
        let (a, b) = (lazy.weight_polytope().unwrap(), expanded.weight_polytope().unwrap());
        prop_assert_eq!(a.vertices(), b.vertices());
    }
}

#[test]
fn identity_tensor_weights() {
    let id = WeightedVector::identity(3);
    let u = Cocharacter(vec![2, -1, -1]);
    for q in 1..5 {
        let iq = WeightedVector::tensor_power(id.clone(), q).unwrap();
        assert_eq!(weight(&u, &iq).unwrap(), q as i64 * weight(&u, &id).unwrap());
    }
}

#[test]
fn descriptor_round_trip() {
    let v = sym("x^3*y - 2*y^4");
    let desc = v.rep().to_descriptor();
    let text = serde_json::to_string(&desc).unwrap();
    let rep = RepresentationSpec::from_descriptor(&serde_json::from_str(&text).unwrap()).unwrap();
    let back = WeightedVector::from_descriptor(rep, &v.to_descriptor().unwrap()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn bombieri_norm_is_unitary_invariant() {
    // The permutation x ↔ y and the diagonal phase are unitary.
    let v = sym("x^3 + 3*x*y^2 - y^3");
    let swap = common::exact(&[vec![0, 1], vec![1, 0]]);
    assert_eq!(v.norm_squared().unwrap(), v.group_act(&swap).unwrap().norm_squared().unwrap());
    let i = num_complex::Complex::new(rat(0), rat(1));
    let phase = pairstab::matrix::ExactMatrix::diagonal(vec![i, gauss(rat(1))]);
    assert_eq!(v.norm_squared().unwrap(), v.group_act(&phase).unwrap().norm_squared().unwrap());
}
