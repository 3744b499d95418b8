use semihole_core::engine::{hilbert_basis_of_cone, min_shift};
use semihole_core::tables::{marginal_matrix, remove_redundant_rows};
use semihole_core::{GeneratorMatrix, MarginalModel, Point};

fn fixture(name: &str) -> GeneratorMatrix {
    let path = format!("{}/../../fixtures/{name}.mat", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    let rows: Vec<Vec<i64>> = text
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    GeneratorMatrix::from_rows(&rows).unwrap()
}

#[test]
fn all_two_way_margins_match_listing() {
    let model = MarginalModel::parse("2x2x2x2", "12,13,14,23,24,34").unwrap();
    assert_eq!(marginal_matrix(&model).unwrap(), fixture("k4"));
}

#[test]
fn three_way_margin_model_after_row_removal() {
    let model = MarginalModel::parse("2x2x2x2", "12,13,14,234").unwrap();
    let raw = marginal_matrix(&model).unwrap();
    assert_eq!(raw.dim(), 4 * 3 + 8);
    assert_eq!(
        remove_redundant_rows(&raw).unwrap(),
        fixture("model_12_13_14_234")
    );
}

#[test]
fn k4_hilbert_basis() {
    let a = fixture("k4");
    let hb = hilbert_basis_of_cone(&a).unwrap();
    assert_eq!(hb.len(), 17);
    let ones = Point::from(vec![1; 24]);
    let holes: Vec<&Point> = hb.holes().map(|e| &e.vector).collect();
    assert_eq!(holes, vec![&ones]);
    assert_eq!(hb.elements.last().unwrap().vector, ones);
    for i in 0..16 {
        assert_eq!(min_shift(&a, &ones, i).unwrap().value(), Some(1));
    }
}

#[test]
fn three_way_margin_hilbert_basis() {
    let a = fixture("model_12_13_14_234");
    let hb = hilbert_basis_of_cone(&a).unwrap();
    let holes: Vec<Point> = hb.holes().map(|e| e.vector.clone()).collect();
    assert_eq!(hb.len(), 18);
    assert!(holes.contains(&Point::from(vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0])));
    assert!(holes.contains(&Point::from(vec![1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1])));
    let b17 = Point::from(vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0]);
    assert!(!min_shift(&a, &b17, 0).unwrap().is_finite());
}
