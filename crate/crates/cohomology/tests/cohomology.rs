use tropcoh_cohomology::engines::{compact_cochain_complex, ordinary_cochain_complex};
use tropcoh_cohomology::io::cellsheaf_from_str;
use tropcoh_cohomology::{
    betti_tables, build_sheaf, compact_cohomology, degree, fundamental_cycle_boundary, ordinary_cohomology,
    pd_report, unit_top_cochain,
};
use tropcoh_core::linalg::rational::{rat, Rational};
use tropcoh_core::linalg::SparseMatrix;
use tropcoh_core::polyhedral::complex_from_str;

const LINE: &str = r#"{"ambient_dim": 2, "maximal_cells": [
  {"vertices": [[0,0]], "rays": [[-1,0]]},
  {"vertices": [[0,0]], "rays": [[0,-1]]},
  {"vertices": [[0,0]], "rays": [[1,1]]}]}"#;

const AXES: &str = r#"{"ambient_dim": 2, "maximal_cells": [
  {"vertices": [[0,0]], "rays": [[1,0]]},
  {"vertices": [[0,0]], "rays": [[-1,0]]},
  {"vertices": [[0,0]], "rays": [[0,1]]},
  {"vertices": [[0,0]], "rays": [[0,-1]]}]}"#;

const T1: &str = r#"{"ambient_dim": 1, "tropical_coords": [1], "maximal_cells": [
  {"vertices": [[0]], "rays": [[-1]]}]}"#;

fn r1() -> &'static str {
    r#"{"ambient_dim": 1, "maximal_cells": [{"vertices": [[0]], "lineality": [[1]]}]}"#
}

#[test]
fn tropical_line_tables() {
    let c = complex_from_str(LINE).unwrap();
    let (h, hc) = betti_tables(&c).unwrap();
    assert_eq!(h.h, vec![vec![1, 0], vec![2, 0]]);
    assert_eq!(hc.h, vec![vec![0, 2], vec![0, 1]]);
    assert!(pd_report(&c).unwrap().pd_holds);
}

#[test]
fn tropical_line_compact_by_hand() {
    // p = 0: C^0 = Q (vertex), C^1 = Q^3 (edges); delta = (1,1,1)^T up to signs, rank 1.
    // p = 1: C^0 = F^1(v) = Q^2, C^1 = Q^3, each edge restricts to its own line: rank 2.
    let c = complex_from_str(LINE).unwrap();
    let p0 = compact_cochain_complex(&build_sheaf(&c, 0).unwrap());
    assert_eq!(p0.dims, vec![1, 3]);
    assert_eq!(p0.ranks(), vec![1]);
    let p1 = compact_cochain_complex(&build_sheaf(&c, 1).unwrap());
    assert_eq!(p1.dims, vec![2, 3]);
    assert_eq!(p1.ranks(), vec![2]);
}

#[test]
fn axes_fail_duality() {
    let c = complex_from_str(AXES).unwrap();
    let (h, hc) = betti_tables(&c).unwrap();
    assert_eq!(h.get(0, 0), 1);
    assert_eq!(hc.get(1, 1), 2);
    let rep = pd_report(&c).unwrap();
    assert!(rep.balanced);
    assert!(!rep.pd_holds);
    assert!(rep
        .comparisons
        .iter()
        .any(|x| (x.p, x.q, x.ordinary, x.compact_dual) == (0, 0, 1, 2)));
}

#[test]
fn tropical_half_line() {
    let c = complex_from_str(T1).unwrap();
    let (h, hc) = betti_tables(&c).unwrap();
    // the cell [-inf, 0] is compact, so both flavours agree
    assert_eq!(h.h, vec![vec![1, 0], vec![0, 0]]);
    assert_eq!(hc.h, h.h);
}

#[test]
fn real_line() {
    let c = complex_from_str(r1()).unwrap();
    let (h, hc) = betti_tables(&c).unwrap();
    assert_eq!(h.h, vec![vec![1, 0], vec![1, 0]]);
    assert_eq!(hc.h, vec![vec![0, 1], vec![0, 1]]);
}

#[test]
fn euler_characteristics_agree_with_cell_counts() {
    // compact Euler characteristic equals sum over cells of (-1)^dim dim F^p(sigma)
    let c = complex_from_str(LINE).unwrap();
    for p in 0..=1 {
        let s = build_sheaf(&c, p).unwrap();
        let cc = compact_cochain_complex(&s);
        let direct: i64 = s
            .cells
            .iter()
            .map(|x| if x.dim % 2 == 0 { x.space_dim as i64 } else { -(x.space_dim as i64) })
            .sum();
        assert_eq!(cc.euler_characteristic(), direct);
        let oc = ordinary_cochain_complex(&s).unwrap();
        assert!(oc.square_zero());
    }
}

const TP1: &str = r#"{"direction": "sheaf", "cells": [
  {"id": "a", "dim": 0, "space_dim": 1},
  {"id": "b", "dim": 0, "space_dim": 1},
  {"id": "c", "dim": 0, "space_dim": 1},
  {"id": "e", "dim": 1, "space_dim": 1},
  {"id": "f", "dim": 1, "space_dim": 1}],
  "relations": [
  {"from": "a", "to": "e", "matrix": [[1]]},
  {"from": "b", "to": "e", "matrix": [[1]]},
  {"from": "b", "to": "f", "matrix": [[1]]},
  {"from": "c", "to": "f", "matrix": [[1]]}]}"#;

const TP1_P1: &str = r#"{"direction": "sheaf", "p": 1, "cells": [
  {"id": "a", "dim": 0, "space_dim": 0},
  {"id": "b", "dim": 0, "space_dim": 1},
  {"id": "c", "dim": 0, "space_dim": 0},
  {"id": "e", "dim": 1, "space_dim": 1},
  {"id": "f", "dim": 1, "space_dim": 1}],
  "relations": [
  {"from": "a", "to": "e", "matrix": [[]]},
  {"from": "b", "to": "e", "matrix": [[1]]},
  {"from": "b", "to": "f", "matrix": [[1]]},
  {"from": "c", "to": "f", "matrix": [[]]}]}"#;

#[test]
fn abstract_projective_line() {
    let p0 = cellsheaf_from_str(TP1).unwrap();
    let p1 = cellsheaf_from_str(TP1_P1).unwrap();
    assert_eq!(p1.p, Some(1));
    assert_eq!(compact_cohomology(&p0.datum).unwrap(), vec![1, 0]);
    assert_eq!(ordinary_cohomology(&p0.datum).unwrap(), vec![1, 0]);
    assert_eq!(compact_cohomology(&p1.datum).unwrap(), vec![0, 1]);
    assert_eq!(ordinary_cohomology(&p1.datum).unwrap(), vec![0, 1]);
}

#[test]
fn cellsheaf_rejects_bad_shape() {
    let bad = TP1.replace(r#""matrix": [[1]]}]"#, r#""matrix": [[1, 2]]}]"#);
    assert!(cellsheaf_from_str(&bad).unwrap_err().is_parse());
}

#[test]
fn degree_on_the_line() {
    let c = complex_from_str(LINE).unwrap();
    let first = c.facets()[0];
    let u = unit_top_cochain(&c, first).unwrap();
    assert_eq!(degree(&c, &u).unwrap(), rat(1));
    // the degree kills coboundaries
    let s = build_sheaf(&c, 1).unwrap();
    let cc = compact_cochain_complex(&s);
    let d: &SparseMatrix = &cc.differentials[0];
    let dense = d.to_dense();
    for j in 0..dense.ncols() {
        let col: Vec<Rational> = (0..dense.nrows()).map(|i| dense.get(i, j).clone()).collect();
        assert_eq!(degree(&c, &col).unwrap(), rat(0));
    }
    assert!(fundamental_cycle_boundary(&c).unwrap().is_empty());
}

#[test]
fn degree_requires_balancing() {
    let mutant = LINE.replace(r#""rays": [[1,1]]}"#, r#""rays": [[1,1]], "weight": 2}"#);
    let c = complex_from_str(&mutant).unwrap();
    let u = unit_top_cochain(&c, c.facets()[0]).unwrap();
    assert_eq!(degree(&c, &u).unwrap_err().kind(), "BalancingRequiredError");
    assert!(!fundamental_cycle_boundary(&c).unwrap().is_empty());
}
