//! Reading and writing complex files.
//!
//! Format: `{"ambient_dim": r, "maximal_cells": [{"vertices": [[..]], "rays": [[..]],
//! "weight": m}], "tropical_coords": [..]}`. Coordinates in `tropical_coords` are 1-based and
//! default to those appearing as `"-inf"` in some vertex. Cells may carry `"lineality"`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::complex::PolyhedralComplex;
use super::polyhedron::Polyhedron;
use crate::error::{Error, Result};
use crate::linalg::rational::{integer_from_json, rational_from_json, rational_to_json, Rational};

pub fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn expect_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

pub fn check_keys(obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(parse_err(format!("unknown field {k:?} in {what}")));
        }
    }
    Ok(())
}

pub fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

/// A vertex coordinate list; `"-inf"` entries become sedentary coordinates.
fn parse_vertex(v: &Value, r: usize) -> Result<(Vec<Rational>, BTreeSet<usize>)> {
    let a = expect_array(v, "vertex")?;
    if a.len() != r {
        return Err(parse_err(format!("vertex has {} coordinates, expected {r}", a.len())));
    }
    let mut x = Vec::with_capacity(r);
    let mut sed = BTreeSet::new();
    for (i, c) in a.iter().enumerate() {
        if c.as_str().is_some_and(|s| s.trim() == "-inf") {
            sed.insert(i);
            x.push(Rational::from_integer(BigInt::from(0)));
        } else {
            x.push(rational_from_json(c)?);
        }
    }
    Ok((x, sed))
}

fn parse_direction(v: &Value, r: usize, what: &str) -> Result<Vec<BigInt>> {
    let a = expect_array(v, what)?;
    if a.len() != r {
        return Err(parse_err(format!("{what} has {} coordinates, expected {r}", a.len())));
    }
    let q: Vec<Rational> = a
        .iter()
        .map(|c| {
            if c.as_str().is_some_and(|s| s.contains("inf")) {
                Err(parse_err(format!("infinite entry in a {what}")))
            } else {
                rational_from_json(c)
            }
        })
        .collect::<Result<_>>()?;
    Ok(crate::linalg::rational::primitive_integer(&q))
}

pub fn complex_from_json(v: &Value) -> Result<PolyhedralComplex> {
    let obj = v.as_object().ok_or_else(|| parse_err("complex file must be an object"))?;
    check_keys(obj, &["ambient_dim", "maximal_cells", "tropical_coords"], "complex")?;
    let r = parse_usize(obj.get("ambient_dim").ok_or_else(|| parse_err("missing ambient_dim"))?, "ambient_dim")?;
    let cells = expect_array(
        obj.get("maximal_cells").ok_or_else(|| parse_err("missing maximal_cells"))?,
        "maximal_cells",
    )?;
    let mut trop: BTreeSet<usize> = BTreeSet::new();
    let explicit_trop = obj.get("tropical_coords").is_some();
    if let Some(t) = obj.get("tropical_coords") {
        for c in expect_array(t, "tropical_coords")? {
            let i = parse_usize(c, "tropical coordinate")?;
            if i == 0 || i > r {
                return Err(parse_err(format!("tropical coordinate {i} out of range 1..{r}")));
            }
            trop.insert(i - 1);
        }
    }
    let mut maximal = Vec::with_capacity(cells.len());
    for (k, cell) in cells.iter().enumerate() {
        let co = cell
            .as_object()
            .ok_or_else(|| parse_err(format!("maximal cell {k} must be an object")))?;
        check_keys(co, &["vertices", "rays", "lineality", "weight"], "maximal cell")?;
        let verts = expect_array(co.get("vertices").ok_or_else(|| parse_err("cell without vertices"))?, "vertices")?;
        if verts.is_empty() {
            return Err(parse_err(format!("maximal cell {k} has no vertices")));
        }
        let mut vs = Vec::new();
        let mut sed: Option<BTreeSet<usize>> = None;
        for v in verts {
            let (x, s) = parse_vertex(v, r)?;
            match &sed {
                None => sed = Some(s),
                Some(prev) if *prev != s => {
                    return Err(parse_err(format!(
                        "vertices of maximal cell {k} have different sedentarity"
                    )))
                }
                _ => {}
            }
            vs.push(x);
        }
        let sed = sed.unwrap_or_default();
        if !explicit_trop {
            trop.extend(sed.iter().copied());
        }
        let rays = match co.get("rays") {
            None => Vec::new(),
            Some(a) => expect_array(a, "rays")?
                .iter()
                .map(|x| parse_direction(x, r, "ray"))
                .collect::<Result<Vec<_>>>()?,
        };
        let lin = match co.get("lineality") {
            None => Vec::new(),
            Some(a) => expect_array(a, "lineality")?
                .iter()
                .map(|x| parse_direction(x, r, "lineality vector"))
                .collect::<Result<Vec<_>>>()?,
        };
        let weight = match co.get("weight") {
            None => BigInt::from(1),
            Some(w) => integer_from_json(w)?,
        };
        let sed: Vec<usize> = sed.into_iter().collect();
        let p = Polyhedron::from_generators(r, &sed, &vs, &rays, &lin)?;
        maximal.push((p, weight));
    }
    let trop: Vec<usize> = trop.into_iter().collect();
    PolyhedralComplex::build(r, &trop, maximal)
}

pub fn complex_from_str(s: &str) -> Result<PolyhedralComplex> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    complex_from_json(&v)
}

pub fn load_complex(path: &std::path::Path) -> Result<PolyhedralComplex> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    complex_from_str(&s)
}

pub fn polyhedron_to_json(p: &Polyhedron) -> Value {
    let vs: Vec<Value> = p
        .vertices()
        .iter()
        .map(|v| {
            Value::Array(
                v.iter()
                    .enumerate()
                    .map(|(i, x)| {
                        if p.sedentarity().contains(&i) {
                            Value::String("-inf".into())
                        } else {
                            rational_to_json(x)
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    let int_rows = |rows: &[Vec<BigInt>]| -> Value {
        Value::Array(
            rows.iter()
                .map(|r| {
                    Value::Array(
                        r.iter()
                            .map(|x| rational_to_json(&Rational::from_integer(x.clone())))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    let mut m = Map::new();
    m.insert("vertices".into(), Value::Array(vs));
    m.insert("rays".into(), int_rows(p.rays()));
    if !p.lineality().is_empty() {
        m.insert("lineality".into(), int_rows(p.lineality()));
    }
    Value::Object(m)
}

pub fn complex_to_json(c: &PolyhedralComplex) -> Value {
    let cells: Vec<Value> = c
        .weighted_maximal_cells()
        .iter()
        .map(|(p, w)| {
            let mut v = polyhedron_to_json(p);
            v.as_object_mut()
                .expect("object")
                .insert("weight".into(), rational_to_json(&Rational::from_integer(w.clone())));
            v
        })
        .collect();
    let mut out = json!({
        "ambient_dim": c.ambient_dim(),
        "maximal_cells": cells,
    });
    if !c.tropical_coords().is_empty() {
        out.as_object_mut().expect("object").insert(
            "tropical_coords".into(),
            json!(c.tropical_coords().iter().map(|i| i + 1).collect::<Vec<_>>()),
        );
    }
    out
}

/// Canonical pretty-printed JSON with sorted keys.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn content_hash(v: &Value) -> String {
    let s = serde_json::to_string(v).expect("serializable");
    hex::encode(Sha256::digest(s.as_bytes()))
}

pub fn complex_hash(c: &PolyhedralComplex) -> String {
    content_hash(&complex_to_json(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = r#"{"ambient_dim": 2, "maximal_cells": [
        {"vertices": [[0, 0]], "rays": [[-1, 0]], "weight": 1},
        {"vertices": [[0, 0]], "rays": [[0, -1]], "weight": 1},
        {"vertices": [[0, 0]], "rays": [[1, 1]], "weight": 1}]}"#;

    #[test]
    fn parses_and_round_trips() {
        let c = complex_from_str(LINE).unwrap();
        assert_eq!(c.len(), 4);
        let j = complex_to_json(&c);
        let d = complex_from_json(&j).unwrap();
        assert_eq!(complex_to_json(&d), j);
        assert_eq!(complex_hash(&c), complex_hash(&d));
    }

    #[test]
    fn minus_infinity_sets_tropical_coords() {
        let s = r#"{"ambient_dim": 1, "maximal_cells": [
            {"vertices": [[0], ["-inf"]], "rays": [], "weight": 1}]}"#;
        assert!(complex_from_str(s).is_err());
        let s = r#"{"ambient_dim": 2, "maximal_cells": [
            {"vertices": [["-inf", 0]], "rays": [[0, 1]], "weight": 1},
            {"vertices": [[0, 0]], "rays": [[0, 1], [-1, 0]], "weight": 1}]}"#;
        assert!(matches!(complex_from_str(s), Err(Error::ComplexAxiom { .. })));
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(complex_from_str("{").unwrap_err().is_parse());
        assert!(complex_from_str(r#"{"ambient_dim": 1}"#).unwrap_err().is_parse());
        let s = r#"{"ambient_dim": 1, "maximal_cells": [{"vertices": [[0.5]], "weight": 1}]}"#;
        assert!(complex_from_str(s).unwrap_err().is_parse());
        let s = r#"{"ambient_dim": 1, "maximal_cells": [{"vertices": [[0]], "rays": [["-inf"]]}]}"#;
        assert!(complex_from_str(s).unwrap_err().is_parse());
    }
}
