//! Reading cellular (co)sheaf data from JSON files.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use tropcoh_core::error::Result;
use tropcoh_core::linalg::rational::{rational_from_json, rational_to_json};
use tropcoh_core::linalg::RationalMatrix;
use tropcoh_core::polyhedral::io::{check_keys, expect_array, parse_err, parse_usize};

use super::sheaf::{automatic_signs, CellularSheafDatum, Direction, Relation, SheafCell};

/// A datum as read from a file, with the optional bidegree label `p`.
#[derive(Clone, Debug)]
pub struct CellSheafFile {
    pub datum: CellularSheafDatum,
    pub p: Option<usize>,
}

fn id_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_u64() || n.is_i64() => Ok(n.to_string()),
        _ => Err(parse_err("cell ids must be strings or integers")),
    }
}

fn parse_matrix(v: &Value, rows: usize, cols: usize) -> Result<RationalMatrix> {
    let arr = expect_array(v, "matrix")?;
    if arr.is_empty() && (rows == 0 || cols == 0) {
        return Ok(RationalMatrix::zeros(rows, cols));
    }
    let mut out = Vec::with_capacity(arr.len());
    for row in arr {
        let r = expect_array(row, "matrix row")?;
        out.push(r.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?);
    }
    if out.len() != rows || out.iter().any(|r| r.len() != cols) {
        return Err(parse_err(format!(
            "matrix has the wrong shape, expected {rows}x{cols}"
        )));
    }
    RationalMatrix::from_rows(cols, &out)
}

pub fn cellsheaf_from_json(v: &Value) -> Result<CellSheafFile> {
    let obj = v.as_object().ok_or_else(|| parse_err("cell sheaf file must be an object"))?;
    check_keys(obj, &["cells", "relations", "direction", "p"], "cell sheaf")?;
    let direction = match obj.get("direction").and_then(Value::as_str) {
        Some("sheaf") => Direction::Sheaf,
        Some("cosheaf") => Direction::Cosheaf,
        _ => return Err(parse_err("direction must be \"sheaf\" or \"cosheaf\"")),
    };
    let p = obj.get("p").map(|x| parse_usize(x, "p")).transpose()?;
    let mut cells = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for c in expect_array(obj.get("cells").ok_or_else(|| parse_err("missing cells"))?, "cells")? {
        let co = c.as_object().ok_or_else(|| parse_err("cells must be objects"))?;
        check_keys(co, &["id", "dim", "space_dim"], "cell")?;
        let label = id_string(co.get("id").ok_or_else(|| parse_err("cell without id"))?)?;
        let dim = parse_usize(co.get("dim").ok_or_else(|| parse_err("cell without dim"))?, "dim")?;
        let space_dim = parse_usize(
            co.get("space_dim").ok_or_else(|| parse_err("cell without space_dim"))?,
            "space_dim",
        )?;
        if index.insert(label.clone(), cells.len()).is_some() {
            return Err(parse_err(format!("duplicate cell id {label}")));
        }
        cells.push(SheafCell { label, dim, space_dim });
    }
    let mut parsed: Vec<((usize, usize), RationalMatrix, Option<i32>)> = Vec::new();
    let rels = match obj.get("relations") {
        None => Vec::new(),
        Some(r) => expect_array(r, "relations")?.clone(),
    };
    for r in &rels {
        let ro = r.as_object().ok_or_else(|| parse_err("relations must be objects"))?;
        check_keys(ro, &["from", "to", "matrix", "sign"], "relation")?;
        let look = |k: &str| -> Result<usize> {
            let id = id_string(ro.get(k).ok_or_else(|| parse_err(format!("relation without {k}")))?)?;
            index
                .get(&id)
                .copied()
                .ok_or_else(|| parse_err(format!("relation refers to unknown cell {id}")))
        };
        let (from, to) = (look("from")?, look("to")?);
        let (rows, cols) = (cells[to].space_dim, cells[from].space_dim);
        let matrix = parse_matrix(
            ro.get("matrix").ok_or_else(|| parse_err("relation without matrix"))?,
            rows,
            cols,
        )?;
        let key = match direction {
            Direction::Sheaf => (from, to),
            Direction::Cosheaf => (to, from),
        };
        let sign = match ro.get("sign") {
            None => None,
            Some(s) => match s.as_i64() {
                Some(1) => Some(1),
                Some(-1) => Some(-1),
                _ => return Err(parse_err("sign must be 1 or -1")),
            },
        };
        parsed.push((key, matrix, sign));
    }
    let dims: Vec<usize> = cells.iter().map(|c| c.dim).collect();
    let covers: Vec<(usize, usize)> = parsed.iter().map(|x| x.0).collect();
    let auto = automatic_signs(&dims, &covers);
    let mut relations = BTreeMap::new();
    for (key, matrix, sign) in parsed {
        let sign = sign.unwrap_or_else(|| auto.get(&key).copied().unwrap_or(1));
        if relations.insert(key, Relation { matrix, sign }).is_some() {
            return Err(parse_err("relation listed twice"));
        }
    }
    Ok(CellSheafFile {
        datum: CellularSheafDatum::new(cells, relations, direction)?,
        p,
    })
}

pub fn cellsheaf_from_str(s: &str) -> Result<CellSheafFile> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    cellsheaf_from_json(&v)
}

pub fn load_cellsheaf(path: &std::path::Path) -> Result<CellSheafFile> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    cellsheaf_from_str(&s)
}

pub fn cellsheaf_to_json(d: &CellularSheafDatum, p: Option<usize>) -> Value {
    let cells: Vec<Value> = d
        .cells
        .iter()
        .map(|c| json!({"id": c.label, "dim": c.dim, "space_dim": c.space_dim}))
        .collect();
    let relations: Vec<Value> = d
        .relations
        .iter()
        .map(|(&(t, s), r)| {
            let (from, to) = match d.direction {
                Direction::Sheaf => (t, s),
                Direction::Cosheaf => (s, t),
            };
            let m: Vec<Value> = (0..r.matrix.nrows())
                .map(|i| Value::Array(r.matrix.row(i).iter().map(rational_to_json).collect()))
                .collect();
            json!({
                "from": d.cells[from].label,
                "to": d.cells[to].label,
                "matrix": m,
                "sign": r.sign,
            })
        })
        .collect();
    let mut v = json!({
        "cells": cells,
        "relations": relations,
        "direction": match d.direction { Direction::Sheaf => "sheaf", Direction::Cosheaf => "cosheaf" },
    });
    if let Some(p) = p {
        v.as_object_mut().expect("object").insert("p".into(), json!(p));
    }
    v
}
