use pairstab::lattice::{
    contains, convex_hull, min_scale_containment, pairing, strictly_dominates, support_max, support_min, Character,
    Cocharacter, Point,
};
use pairstab::number::rat;
use proptest::prelude::*;

fn points(raw: &[Vec<i64>]) -> Vec<Point> {
    raw.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
}

fn cloud(rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, rank), 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_min_is_min_over_generators(raw in cloud(2), u in prop::collection::vec(-3i64..=3, 2)) {
        let p = convex_hull(&points(&raw)).unwrap();
        let brute = raw.iter().map(|a| pairing(&Cocharacter(u.clone()), &Character(a.clone())).unwrap()).min().unwrap();
        let dir: Vec<_> = u.iter().map(|&x| rat(x)).collect();
        prop_assert_eq!(support_min(&p, &dir).unwrap(), rat(brute));
        let neg: Vec<_> = dir.iter().map(|x| -x).collect();
        prop_assert_eq!(support_max(&p, &neg).unwrap(), -rat(brute));
    }

    #[test]
    fn hull_vertices_are_generators(raw in cloud(3)) {
        let p = convex_hull(&points(&raw)).unwrap();
        prop_assert!(!p.vertices().is_empty());
        for v in p.vertices() {
            prop_assert!(points(&raw).contains(v));
        }
        for g in points(&raw) {
            prop_assert!(p.contains_point(&g));
        }
    }

    #[test]
    fn containment_is_reflexive_and_monotone(a in cloud(2), b in cloud(2)) {
        let pa = convex_hull(&points(&a)).unwrap();
        let both: Vec<Vec<i64>> = a.iter().chain(b.iter()).cloned().collect();
        let pab = convex_hull(&points(&both)).unwrap();
        prop_assert!(contains(&pa, &pa).unwrap());
        prop_assert!(contains(&pab, &pa).unwrap());
    }

    #[test]
    fn min_scale_of_multiple(k in 1u64..6, raw in cloud(2)) {
        // Reference polytope: a simplex around the origin together with the cloud.
        let mut base = vec![vec![-1, -1], vec![2, -1], vec![-1, 2]];
        base.extend(raw);
        let s = convex_hull(&points(&base)).unwrap();
        let scaled = s.scaled(&rat(k as i64));
        prop_assert_eq!(min_scale_containment(&scaled, &s).unwrap(), k);
    }
}

#[test]
fn strict_dominance_needs_interior() {
    let inner = convex_hull(&points(&[vec![0]])).unwrap();
    let wide = convex_hull(&points(&[vec![-2], vec![2]])).unwrap();
    let half = convex_hull(&points(&[vec![0], vec![2]])).unwrap();
    assert!(strictly_dominates(&wide, &inner).unwrap());
    assert!(!strictly_dominates(&half, &inner).unwrap());
}
