//! Built-in complexes, sheaf data and the regression suite run by `tropcoh corpus`.

use num_bigint::BigInt;
use serde_json::{json, Value};

use tropcoh_cohomology::io::cellsheaf_from_str;
use tropcoh_cohomology::{
    betti_tables, compact_cohomology, fundamental_cycle_boundary, multitangent_space, ordinary_cohomology, pd_report,
    CellularSheafDatum,
};
use tropcoh_cohomology::multitangent::inclusion_map;
use tropcoh_core::error::Result;
use tropcoh_core::linalg::rational::{rat, rats};
use tropcoh_core::polyhedral::ops::{closure, product, real_space, tropical_space};
use tropcoh_core::polyhedral::{complex_from_str, is_balanced, PolyhedralComplex};
use tropcoh_matroids::{bergman_fan, matroidal_modification_triple, os_dims, Matroid};
use tropcoh_modifications::{
    complete_modification, equal_up_to_refinement, graph_complex, project_modification, AffinePiece, PLFunction,
};

pub const TROPICAL_LINE: &str = r#"{
  "ambient_dim": 2,
  "maximal_cells": [
    {"vertices": [["0", "0"]], "rays": [["-1", "0"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["0", "-1"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["1", "1"]], "weight": 1}
  ]
}
"#;

pub const AXES: &str = r#"{
  "ambient_dim": 2,
  "maximal_cells": [
    {"vertices": [["0", "0"]], "rays": [["1", "0"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["-1", "0"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["0", "1"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["0", "-1"]], "weight": 1}
  ]
}
"#;

/// The closed half line `[-inf, 0]` in `T`.
pub const HALF_LINE: &str = r#"{
  "ambient_dim": 1,
  "tropical_coords": [1],
  "maximal_cells": [
    {"vertices": [["0"]], "rays": [["-1"]], "weight": 1}
  ]
}
"#;

/// The tropical line with weight 2 on the diagonal ray.
pub const LINE_MUTANT: &str = r#"{
  "ambient_dim": 2,
  "maximal_cells": [
    {"vertices": [["0", "0"]], "rays": [["-1", "0"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["0", "-1"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["1", "1"]], "weight": 2}
  ]
}
"#;

/// Three rays whose directions do not sum to zero.
pub const SKEW_MUTANT: &str = r#"{
  "ambient_dim": 2,
  "maximal_cells": [
    {"vertices": [["0", "0"]], "rays": [["-1", "0"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["0", "-1"]], "weight": 1},
    {"vertices": [["0", "0"]], "rays": [["1", "2"]], "weight": 1}
  ]
}
"#;

/// Segment `[0,1]` with its two endpoints and a middle vertex, as an abstract sheaf datum for
/// `p = 0`: constant coefficients.
pub const PROJECTIVE_LINE_P0: &str = r#"{
  "direction": "sheaf",
  "p": 0,
  "cells": [
    {"id": "left", "dim": 0, "space_dim": 1},
    {"id": "mid", "dim": 0, "space_dim": 1},
    {"id": "right", "dim": 0, "space_dim": 1},
    {"id": "e1", "dim": 1, "space_dim": 1},
    {"id": "e2", "dim": 1, "space_dim": 1}
  ],
  "relations": [
    {"from": "left", "to": "e1", "matrix": [["1"]]},
    {"from": "mid", "to": "e1", "matrix": [["1"]]},
    {"from": "mid", "to": "e2", "matrix": [["1"]]},
    {"from": "right", "to": "e2", "matrix": [["1"]]}
  ]
}
"#;

/// Same poset for `p = 1`: the points at infinity carry the zero space.
pub const PROJECTIVE_LINE_P1: &str = r#"{
  "direction": "sheaf",
  "p": 1,
  "cells": [
    {"id": "left", "dim": 0, "space_dim": 0},
    {"id": "mid", "dim": 0, "space_dim": 1},
    {"id": "right", "dim": 0, "space_dim": 0},
    {"id": "e1", "dim": 1, "space_dim": 1},
    {"id": "e2", "dim": 1, "space_dim": 1}
  ],
  "relations": [
    {"from": "left", "to": "e1", "matrix": []},
    {"from": "mid", "to": "e1", "matrix": [["1"]]},
    {"from": "mid", "to": "e2", "matrix": [["1"]]},
    {"from": "right", "to": "e2", "matrix": []}
  ]
}
"#;

/// `max(0, x)` on `R`.
pub const MAX_ZERO_X: &str = r#"{
  "mode": "max",
  "terms": [
    {"coeff": "0", "exponents": ["0"]},
    {"coeff": "0", "exponents": ["1"]}
  ]
}
"#;

fn parse(s: &str) -> PolyhedralComplex {
    complex_from_str(s).expect("built-in complex parses")
}

pub fn tropical_line() -> PolyhedralComplex {
    parse(TROPICAL_LINE)
}

pub fn axes() -> PolyhedralComplex {
    parse(AXES)
}

pub fn half_line() -> PolyhedralComplex {
    parse(HALF_LINE)
}

pub fn line_mutant() -> PolyhedralComplex {
    parse(LINE_MUTANT)
}

pub fn skew_mutant() -> PolyhedralComplex {
    parse(SKEW_MUTANT)
}

pub fn projective_line(p: usize) -> CellularSheafDatum {
    let s = if p == 0 { PROJECTIVE_LINE_P0 } else { PROJECTIVE_LINE_P1 };
    cellsheaf_from_str(s).expect("built-in sheaf parses").datum
}

pub fn max_zero_x() -> PLFunction {
    PLFunction::max(vec![
        AffinePiece { linear: rats(&[0]), constant: rat(0) },
        AffinePiece { linear: rats(&[1]), constant: rat(0) },
    ])
}

pub fn uniform_fan(r: usize, n: usize) -> PolyhedralComplex {
    bergman_fan(&Matroid::uniform(r, n).expect("valid uniform matroid")).expect("uniform matroids are loopless")
}

/// Balanced complexes used by the invariant checks.
pub fn balanced_complexes() -> Vec<(&'static str, PolyhedralComplex)> {
    vec![
        ("L", tropical_line()),
        ("Y", axes()),
        ("R1", real_space(1)),
        ("R2", real_space(2)),
        ("T1", tropical_space(1)),
        ("U(3,4)", uniform_fan(3, 4)),
        ("U(2,4)", uniform_fan(2, 4)),
        ("L x T1", product(&tropical_line(), &tropical_space(1)).expect("product")),
        ("closure of L", closure(&tropical_line(), &[0, 1]).expect("closure")),
    ]
}

/// Deliberately unbalanced variants.
pub fn unbalanced_mutants() -> Vec<(&'static str, PolyhedralComplex)> {
    vec![("L with weights (1,1,2)", line_mutant()), ("skewed line", skew_mutant())]
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CaseResult {
    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "passed": self.passed, "detail": self.detail})
    }
}

type Check = fn() -> Result<(bool, String)>;

fn verdict(ok: bool, detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((ok, detail.into()))
}

fn line_multitangent() -> Result<(bool, String)> {
    let c = tropical_line();
    let d = multitangent_space(&c, 0, 1).dim();
    verdict(d == 2, format!("dim F_1(vertex) = {d}"))
}

fn half_line_point_at_infinity() -> Result<(bool, String)> {
    let c = half_line();
    let inf: Vec<_> = c.cells().iter().filter(|x| x.sedentarity() == [0]).collect();
    let ok = inf.len() == 1 && inf[0].dim() == 0;
    verdict(ok, format!("{} cells of sedentarity {{1}}", inf.len()))
}

fn line_cells() -> Result<(bool, String)> {
    let c = tropical_line();
    let v = c.cells_of_dim(0).len();
    let e = c.cells_of_dim(1).len();
    verdict(v == 1 && e == 3, format!("{v} vertices, {e} rays"))
}

fn line_balanced() -> Result<(bool, String)> {
    let b = is_balanced(&tropical_line())?;
    verdict(b, format!("balanced = {b}"))
}

fn sedentary_vertex_vanishes() -> Result<(bool, String)> {
    let c = tropical_space(2);
    let corner = c
        .cells()
        .iter()
        .position(|x| x.sedentarity() == [0, 1])
        .expect("T^2 has a corner");
    let dims: Vec<usize> = (1..=2).map(|p| multitangent_space(&c, corner, p).dim()).collect();
    verdict(dims == [0, 0], format!("dim F_p(corner) for p = 1, 2: {dims:?}"))
}

fn half_line_zero_map() -> Result<(bool, String)> {
    let c = half_line();
    let inf = c.cells().iter().position(|x| x.sedentarity() == [0]).expect("point at infinity");
    let edge = c.cells_of_dim(1)[0];
    let m = inclusion_map(&c, inf, edge, 1)?;
    verdict(
        m.nrows() == 0 && m.ncols() == 1,
        format!("map F_1(edge) -> F_1(-inf) has shape {}x{}", m.nrows(), m.ncols()),
    )
}

fn axes_compact_p1() -> Result<(bool, String)> {
    let (_, hc) = betti_tables(&axes())?;
    let row = hc.h[1].clone();
    verdict(row == [0, 2], format!("h^{{1,q}}_c = {row:?}"))
}

fn line_ordinary_p1() -> Result<(bool, String)> {
    let (h, _) = betti_tables(&tropical_line())?;
    let row = h.h[1].clone();
    verdict(row == [2, 0], format!("h^{{1,q}} = {row:?}"))
}

fn plane_tables() -> Result<(bool, String)> {
    let (h, hc) = betti_tables(&real_space(2))?;
    let ok = h.h == [[1, 0, 0], [2, 0, 0], [1, 0, 0]] && hc.h == [[0, 0, 1], [0, 0, 2], [0, 0, 1]];
    verdict(ok, format!("h = {:?}, h_c = {:?}", h.h, hc.h))
}

fn projective_line_tables() -> Result<(bool, String)> {
    let mut rows = Vec::new();
    for p in 0..=1 {
        let d = projective_line(p);
        rows.push((ordinary_cohomology(&d)?, compact_cohomology(&d)?));
    }
    let ok = rows[0].0 == [1, 0] && rows[1].0 == [0, 1] && rows[0].1 == [1, 0] && rows[1].1 == [0, 1];
    verdict(ok, format!("(ordinary, compact) per p: {rows:?}"))
}

fn line_duality() -> Result<(bool, String)> {
    let r = pd_report(&tropical_line())?;
    verdict(r.pd_holds, format!("pd_holds = {}", r.pd_holds))
}

fn axes_duality_fails() -> Result<(bool, String)> {
    let r = pd_report(&axes())?;
    let hit = r
        .comparisons
        .iter()
        .any(|x| (x.p, x.q, x.ordinary, x.compact_dual) == (0, 0, 1, 2));
    verdict(!r.pd_holds && hit, format!("pd_holds = {}, (0,0) vs (1,1) mismatch found = {hit}", r.pd_holds))
}

fn real_line_duality() -> Result<(bool, String)> {
    let r = pd_report(&real_space(1))?;
    verdict(r.pd_holds, format!("pd_holds = {}", r.pd_holds))
}

fn u23_bases() -> Result<(bool, String)> {
    let m = Matroid::uniform(2, 3)?;
    let b = m.bases_as_lists();
    verdict(b == [vec![0, 1], vec![0, 2], vec![1, 2]], format!("bases {b:?}"))
}

fn u23_fan_is_line() -> Result<(bool, String)> {
    let f = uniform_fan(2, 3);
    let ok = equal_up_to_refinement(&f, &tropical_line())? && f.cells_of_dim(1).len() == 3;
    verdict(ok, "bergman fan of U(2,3) against L")
}

fn u23_os_dims() -> Result<(bool, String)> {
    let d = os_dims(&Matroid::uniform(2, 3)?)?;
    verdict(d == [1, 2], format!("os_dims = {d:?}"))
}

fn u23_triple() -> Result<(bool, String)> {
    let t = matroidal_modification_triple(&Matroid::uniform(2, 3)?, 2)?;
    let line = equal_up_to_refinement(&t.v, &tropical_line())?;
    let w = equal_up_to_refinement(&t.w, &real_space(1))?;
    let d = t
        .d
        .as_ref()
        .is_some_and(|d| d.dim() == 0 && d.facets().len() == 1 && d.weight(d.facets()[0]) == Some(&BigInt::from(1)));
    verdict(line && w && d && t.coordinate == 2, format!("V = L: {line}, W = R: {w}, D = origin: {d}"))
}

fn graph_of_max() -> Result<(bool, String)> {
    let g = graph_complex(&real_space(1), &max_zero_x())?;
    let v = g.cells_of_dim(0).len();
    let e = g.cells_of_dim(1).len();
    let vertex_at_origin = g.cell(g.cells_of_dim(0)[0]).polyhedron.vertices()[0] == rats(&[0, 0]);
    verdict(v == 1 && e == 2 && vertex_at_origin, format!("{v} vertex, {e} half lines"))
}

fn modification_of_line() -> Result<(bool, String)> {
    let m = complete_modification(&real_space(1), &max_zero_x())?;
    let line = equal_up_to_refinement(&m.v, &tropical_line())?;
    let d = m
        .divisor
        .as_ref()
        .is_some_and(|d| d.dim() == 0 && d.facets().len() == 1 && d.weight(d.facets()[0]) == Some(&BigInt::from(1)));
    verdict(line && d, format!("V = L: {line}, divisor = origin with weight 1: {d}"))
}

fn projection_of_line() -> Result<(bool, String)> {
    let m = project_modification(&tropical_line(), 2)?;
    let w = equal_up_to_refinement(&m.w, &real_space(1))?;
    let d = m
        .divisor
        .as_ref()
        .is_some_and(|d| d.dim() == 0 && d.weight(d.facets()[0]) == Some(&BigInt::from(1)));
    verdict(w && d, format!("W = R: {w}, divisor = origin: {d}"))
}

fn mutants_detected() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for (name, c) in unbalanced_mutants() {
        if is_balanced(&c)? || fundamental_cycle_boundary(&c)?.is_empty() {
            bad.push(name);
        }
    }
    verdict(bad.is_empty(), format!("undetected: {bad:?}"))
}

pub const CASES: &[(&str, Check)] = &[
    ("multitangent space at the vertex of L is 2-dimensional", line_multitangent),
    ("closure of T1 has one point at infinity", half_line_point_at_infinity),
    ("L has one vertex and three rays", line_cells),
    ("L with unit weights is balanced", line_balanced),
    ("F_p vanishes at the corner of T2 for p > 0", sedentary_vertex_vanishes),
    ("T1 edge maps to the zero space at infinity", half_line_zero_map),
    ("compact p = 1 row of Y is (0, 2)", axes_compact_p1),
    ("ordinary p = 1 row of L is (2, 0)", line_ordinary_p1),
    ("tables of R2", plane_tables),
    ("abstract projective line", projective_line_tables),
    ("duality holds on L", line_duality),
    ("duality fails on Y at (0,0)/(1,1)", axes_duality_fails),
    ("duality holds on R1", real_line_duality),
    ("bases of U(2,3)", u23_bases),
    ("bergman fan of U(2,3) is L", u23_fan_is_line),
    ("os_dims of U(2,3)", u23_os_dims),
    ("modification triple of U(2,3) at e = 2", u23_triple),
    ("graph of max(0,x)", graph_of_max),
    ("modification of R along max(0,x)", modification_of_line),
    ("projection of L along the second coordinate", projection_of_line),
    ("unbalanced mutants are detected", mutants_detected),
];

pub fn run_corpus() -> Vec<CaseResult> {
    CASES
        .iter()
        .map(|(name, check)| match check() {
            Ok((passed, detail)) => CaseResult { name: name.to_string(), passed, detail },
            Err(e) => CaseResult {
                name: name.to_string(),
                passed: false,
                detail: format!("{}: {e}", e.kind()),
            },
        })
        .collect()
}
