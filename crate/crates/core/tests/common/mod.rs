#![allow(dead_code)]

use pairstab::lattice::Torus;
use pairstab::matrix::ExactMatrix;
use pairstab::number::{gauss, rat};
use pairstab::poly::RatPoly;
use pairstab::rep::{RepresentationSpec, RowKind, WeightedVector};
use proptest::prelude::*;

pub fn exact(rows: &[Vec<i64>]) -> ExactMatrix {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| gauss(rat(x))).collect()).collect()).unwrap()
}

pub fn invertible(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n)
        .prop_map(|rows| exact(&rows))
        .prop_filter("invertible", |m| m.inverse().is_ok())
}

pub fn sym_poly(max_degree: u32) -> impl Strategy<Value = RatPoly> {
    (1..=max_degree).prop_flat_map(|d| {
        prop::collection::vec(-3i64..=3, d as usize + 1)
            .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
            .prop_map(move |c| {
                RatPoly::from_terms(2, c.iter().enumerate().map(|(i, &x)| (vec![d - i as u32, i as u32], rat(x))))
            })
    })
}

pub fn sym_vector(p: &RatPoly) -> WeightedVector {
    WeightedVector::from_poly(RepresentationSpec::symmetric_power_sl2(p.degree().unwrap()), p).unwrap()
}

pub fn sym(text: &str) -> WeightedVector {
    sym_vector(&RatPoly::parse(text, &["x", "y"]).unwrap())
}

pub fn ternary(text: &str, row: RowKind) -> WeightedVector {
    let names = match row {
        RowKind::Point => ["x", "y", "z"],
        RowKind::Covector => ["u", "v", "w"],
    };
    let p = RatPoly::parse(text, &names).unwrap();
    WeightedVector::from_poly(RepresentationSpec::polynomial_space(3, vec![row], p.degree().unwrap()), &p).unwrap()
}

pub fn trivial_sl2() -> WeightedVector {
    WeightedVector::new(RepresentationSpec::trivial(Torus::Sl2), [(vec![], gauss(rat(1)))].into()).unwrap()
}
