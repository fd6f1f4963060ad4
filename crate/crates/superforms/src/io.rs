//! Superform files.

use serde_json::{json, Value};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::rational::{rational_from_json, rational_to_json};
use tropcoh_core::polyhedral::io::{check_keys, expect_array, parse_err, parse_usize};

use super::form::Superform;
use super::poly::Poly;

fn parse_indices(v: &Value, r: usize, what: &str) -> Result<Vec<usize>> {
    expect_array(v, what)?
        .iter()
        .map(|x| {
            let i = parse_usize(x, what)?;
            if i == 0 || i > r {
                return Err(parse_err(format!("{what} index {i} outside 1..{r}")));
            }
            Ok(i - 1)
        })
        .collect()
}

fn parse_poly(v: &Value, r: usize) -> Result<Poly> {
    let mut p = Poly::zero(r);
    for t in expect_array(v, "poly")? {
        let to = t.as_object().ok_or_else(|| parse_err("polynomial terms must be objects"))?;
        check_keys(to, &["coeff", "exponents"], "polynomial term")?;
        let c = rational_from_json(to.get("coeff").ok_or_else(|| parse_err("missing coeff"))?)?;
        let e: Vec<u32> = match to.get("exponents") {
            None => vec![0; r],
            Some(e) => expect_array(e, "exponents")?
                .iter()
                .map(|x| {
                    parse_usize(x, "exponent")
                        .and_then(|k| u32::try_from(k).map_err(|_| parse_err("exponent too large")))
                })
                .collect::<Result<_>>()?,
        };
        if e.len() != r {
            return Err(parse_err(format!("exponent vector of length {} in R^{r}", e.len())));
        }
        p.add_term(e, c);
    }
    Ok(p)
}

pub fn superform_from_json(v: &Value) -> Result<Superform> {
    let obj = v.as_object().ok_or_else(|| parse_err("superform file must be an object"))?;
    check_keys(obj, &["ambient_dim", "p", "q", "terms"], "superform")?;
    let r = parse_usize(obj.get("ambient_dim").ok_or_else(|| parse_err("missing ambient_dim"))?, "ambient_dim")?;
    let p = parse_usize(obj.get("p").ok_or_else(|| parse_err("missing p"))?, "p")?;
    let q = parse_usize(obj.get("q").ok_or_else(|| parse_err("missing q"))?, "q")?;
    let mut out = Superform::zero(r, p, q);
    for t in expect_array(obj.get("terms").ok_or_else(|| parse_err("missing terms"))?, "terms")? {
        let to = t.as_object().ok_or_else(|| parse_err("terms must be objects"))?;
        check_keys(to, &["K", "L", "poly"], "term")?;
        let k = parse_indices(to.get("K").unwrap_or(&json!([])), r, "K")?;
        let l = parse_indices(to.get("L").unwrap_or(&json!([])), r, "L")?;
        if k.len() != p || l.len() != q {
            return Err(parse_err(format!("term of bidegree ({}, {}) in a ({p}, {q})-form", k.len(), l.len())));
        }
        let f = parse_poly(to.get("poly").ok_or_else(|| parse_err("missing poly"))?, r)?;
        out = out.add(&Superform::term(r, &k, &l, f)?).map_err(|e: Error| parse_err(e.to_string()))?;
    }
    Ok(out)
}

pub fn superform_from_str(s: &str) -> Result<Superform> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    superform_from_json(&v)
}

pub fn load_superform(path: &std::path::Path) -> Result<Superform> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    superform_from_str(&s)
}

pub fn superform_to_json(a: &Superform) -> Value {
    let (p, q) = a.bidegree();
    let terms: Vec<Value> = a
        .terms()
        .iter()
        .map(|((k, l), f)| {
            let poly: Vec<Value> = f
                .terms()
                .iter()
                .map(|(e, c)| json!({"coeff": rational_to_json(c), "exponents": e}))
                .collect();
            json!({
                "K": k.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "L": l.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "poly": poly,
            })
        })
        .collect();
    json!({"ambient_dim": a.ambient_dim(), "p": p, "q": q, "terms": terms})
}
