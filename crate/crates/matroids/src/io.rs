//! Matroid files: explicit bases, a uniform matroid, or a graph.

use serde_json::{json, Value};

use tropcoh_core::error::Result;
use tropcoh_core::polyhedral::io::{check_keys, expect_array, parse_err, parse_usize};

use super::Matroid;

pub fn matroid_from_json(v: &Value) -> Result<Matroid> {
    let obj = v.as_object().ok_or_else(|| parse_err("matroid file must be an object"))?;
    check_keys(obj, &["ground_size", "bases", "uniform", "graph"], "matroid")?;
    let given = ["bases", "uniform", "graph"].iter().filter(|k| obj.contains_key(**k)).count();
    if given != 1 {
        return Err(parse_err("matroid file needs exactly one of bases, uniform, graph"));
    }
    if let Some(u) = obj.get("uniform") {
        let a = expect_array(u, "uniform")?;
        if a.len() != 2 {
            return Err(parse_err("uniform takes [rank, size]"));
        }
        return Matroid::uniform(parse_usize(&a[0], "rank")?, parse_usize(&a[1], "size")?);
    }
    if let Some(g) = obj.get("graph") {
        let mut edges = Vec::new();
        for e in expect_array(g, "graph")? {
            let pair = expect_array(e, "edge")?;
            if pair.len() != 2 {
                return Err(parse_err("edges are pairs of vertices"));
            }
            edges.push((parse_usize(&pair[0], "vertex")?, parse_usize(&pair[1], "vertex")?));
        }
        return Matroid::from_graph(&edges);
    }
    let n = parse_usize(
        obj.get("ground_size").ok_or_else(|| parse_err("bases need ground_size"))?,
        "ground_size",
    )?;
    let mut bases = Vec::new();
    for b in expect_array(obj.get("bases").expect("checked"), "bases")? {
        bases.push(
            expect_array(b, "basis")?
                .iter()
                .map(|x| parse_usize(x, "element"))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matroid::from_bases(n, &bases)
}

pub fn matroid_from_str(s: &str) -> Result<Matroid> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    matroid_from_json(&v)
}

pub fn load_matroid(path: &std::path::Path) -> Result<Matroid> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    matroid_from_str(&s)
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    json!({"ground_size": m.ground_size(), "bases": m.bases_as_lists()})
}
