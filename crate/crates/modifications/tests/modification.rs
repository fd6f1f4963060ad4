use num_bigint::BigInt;
use tropcoh_cohomology::betti_tables;
use tropcoh_core::linalg::rational::{rat, rat_frac, rats, Rational};
use tropcoh_matroids::{bergman_fan, matroidal_modification_triple, Matroid};
use tropcoh_modifications::{
    closed_modification, complete_modification, equal_up_to_refinement, graph_complex, plfunction_from_str,
    project_modification, AffinePiece, PLFunction,
};
use tropcoh_core::polyhedral::{complex_from_str, is_balanced};

const LINE: &str = r#"{"ambient_dim": 2, "maximal_cells": [
  {"vertices": [[0,0]], "rays": [[-1,0]]},
  {"vertices": [[0,0]], "rays": [[0,-1]]},
  {"vertices": [[0,0]], "rays": [[1,1]]}]}"#;

fn real_space(r: usize) -> tropcoh_core::polyhedral::PolyhedralComplex {
    tropcoh_core::polyhedral::ops::real_space(r)
}

fn term(c: i64, a: &[i64]) -> AffinePiece {
    AffinePiece { linear: rats(a), constant: rat(c) }
}

#[test]
fn graph_of_max_on_the_line() {
    let p = PLFunction::max(vec![term(0, &[0]), term(0, &[1])]);
    let g = graph_complex(&real_space(1), &p).unwrap();
    assert_eq!(g.facets().len(), 2);
    let rays: Vec<Vec<BigInt>> = g.facets().iter().map(|&s| g.cell(s).polyhedron.rays()[0].clone()).collect();
    assert!(rays.contains(&vec![BigInt::from(-1), BigInt::from(0)]));
    assert!(rays.contains(&vec![BigInt::from(1), BigInt::from(1)]));
    assert!(!is_balanced(&g).unwrap());
}

#[test]
fn half_slope_is_rejected() {
    let p = PLFunction::max(vec![term(0, &[0]), AffinePiece { linear: vec![rat_frac(1, 2)], constant: rat(0) }]);
    assert_eq!(graph_complex(&real_space(1), &p).unwrap_err().kind(), "IntegralityError");
}

#[test]
fn line_from_max_of_two_terms() {
    let p = plfunction_from_str(r#"{"mode": "max", "terms": [{"coeff": 0, "exponents": [0]}, {"coeff": 0, "exponents": [1]}]}"#).unwrap();
    let m = complete_modification(&real_space(1), &p).unwrap();
    let line = complex_from_str(LINE).unwrap();
    assert!(equal_up_to_refinement(&m.v, &line).unwrap());
    let d = m.divisor.unwrap();
    assert_eq!(d.facets().len(), 1);
    let origin = d.facets()[0];
    assert_eq!(d.cell(origin).polyhedron.vertices()[0], vec![Rational::from_integer(0.into())]);
    assert_eq!(d.weight(origin).unwrap(), &BigInt::from(1));

    let back = project_modification(&line, 2).unwrap();
    assert!(equal_up_to_refinement(&back.w, &real_space(1)).unwrap());
    let d = back.divisor.unwrap();
    assert_eq!(d.dim(), 0);
    assert_eq!(d.weight(d.facets()[0]).unwrap(), &BigInt::from(1));
}

#[test]
fn tropical_plane() {
    let p = PLFunction::max(vec![term(0, &[0, 0]), term(0, &[1, 0]), term(0, &[0, 1])]);
    let m = complete_modification(&real_space(2), &p).unwrap();
    assert!(is_balanced(&m.v).unwrap());
    assert_eq!(m.v.dim(), 2);
    let line = complex_from_str(LINE).unwrap();
    assert!(equal_up_to_refinement(m.divisor.as_ref().unwrap(), &line).unwrap());
    // the standard plane is the Bergman fan of U(3,4) up to refinement
    let u34 = bergman_fan(&Matroid::uniform(3, 4).unwrap()).unwrap();
    assert!(equal_up_to_refinement(&m.v, &u34).unwrap());
}

#[test]
fn constant_function() {
    let p = PLFunction::constant(1, rat(3));
    let m = complete_modification(&real_space(1), &p).unwrap();
    assert!(m.divisor.is_none());
    assert_eq!(m.v.facets().len(), 1);
    assert!(m.v.cell(m.v.facets()[0]).polyhedron.contains_point(&rats(&[5, 3])));
}

#[test]
fn lines_are_not_modifications() {
    let plane = real_space(2);
    assert_eq!(project_modification(&plane, 2).unwrap_err().kind(), "NotAModificationError");
}

#[test]
fn matroidal_projection() {
    let m = Matroid::uniform(3, 4).unwrap();
    let t = matroidal_modification_triple(&m, 3).unwrap();
    let res = project_modification(&t.v, t.coordinate).unwrap();
    assert!(equal_up_to_refinement(&res.w, &t.w).unwrap());
    assert!(equal_up_to_refinement(res.divisor.as_ref().unwrap(), t.d.as_ref().unwrap()).unwrap());
    assert!(equal_up_to_refinement(&res.w, &real_space(2)).unwrap());
}

#[test]
fn closed_line_modification() {
    let p = PLFunction::max(vec![term(0, &[0]), term(0, &[1])]);
    let closed = closed_modification(&real_space(1), &p).unwrap();
    assert_eq!(closed.v.tropical_coords(), &[1]);
    let (h, hc) = betti_tables(&closed.v).unwrap();
    let (h1, hc1) = betti_tables(&real_space(1)).unwrap();
    assert_eq!(h.h, h1.h);
    assert_eq!(hc.h, hc1.h);
}

#[test]
fn per_facet_round_trip() {
    let line = complex_from_str(LINE).unwrap();
    let res = project_modification(&line, 2).unwrap();
    let again = complete_modification(&res.w, &res.function).unwrap();
    assert!(equal_up_to_refinement(&again.v, &line).unwrap());
}
