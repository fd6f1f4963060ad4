//! Piecewise integer-affine functions: tropical polynomials or per-facet affine data.

use num_traits::Zero;
use serde_json::{json, Value};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::rational::{dot, rational_from_json, rational_to_json, Rational};
use tropcoh_core::polyhedral::io::{check_keys, expect_array, parse_err, parse_usize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Max,
    Min,
}

/// `constant + linear · x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub linear: Vec<Rational>,
    pub constant: Rational,
}

impl AffinePiece {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        &self.constant + dot(&self.linear, x)
    }

    pub fn is_integral(&self) -> bool {
        self.linear.iter().all(|a| a.is_integer())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PLFunction {
    /// `max` or `min` over terms `coeff + exponents · x`.
    Tropical { mode: Mode, terms: Vec<AffinePiece> },
    /// One affine piece per facet of a reference complex, in the complex's facet order.
    PerFacet { pieces: Vec<(usize, AffinePiece)> },
}

impl PLFunction {
    pub fn max(terms: Vec<AffinePiece>) -> Self {
        PLFunction::Tropical { mode: Mode::Max, terms }
    }

    pub fn min(terms: Vec<AffinePiece>) -> Self {
        PLFunction::Tropical { mode: Mode::Min, terms }
    }

    pub fn constant(r: usize, c: Rational) -> Self {
        PLFunction::max(vec![AffinePiece {
            linear: vec![Rational::zero(); r],
            constant: c,
        }])
    }

    /// Fails with an integrality error on a non-integral slope.
    pub fn check_integral(&self) -> Result<()> {
        let bad = match self {
            PLFunction::Tropical { terms, .. } => terms.iter().find(|t| !t.is_integral()),
            PLFunction::PerFacet { pieces } => pieces.iter().map(|p| &p.1).find(|t| !t.is_integral()),
        };
        match bad {
            Some(t) => Err(Error::Integrality(format!(
                "slope {:?} is not integral",
                t.linear.iter().map(tropcoh_core::linalg::rational::format_rational).collect::<Vec<_>>()
            ))),
            None => Ok(()),
        }
    }

    /// Value of a tropical polynomial at a point.
    pub fn eval_tropical(&self, x: &[Rational]) -> Option<Rational> {
        match self {
            PLFunction::Tropical { mode, terms } => {
                let vals = terms.iter().map(|t| t.eval(x));
                match mode {
                    Mode::Max => vals.max(),
                    Mode::Min => vals.min(),
                }
            }
            PLFunction::PerFacet { .. } => None,
        }
    }

    pub fn num_vars(&self) -> Option<usize> {
        match self {
            PLFunction::Tropical { terms, .. } => terms.first().map(|t| t.linear.len()),
            PLFunction::PerFacet { pieces } => pieces.first().map(|p| p.1.linear.len()),
        }
    }
}

fn parse_rational_list(v: &Value, what: &str) -> Result<Vec<Rational>> {
    expect_array(v, what)?.iter().map(rational_from_json).collect()
}

pub fn plfunction_from_json(v: &Value) -> Result<PLFunction> {
    let obj = v.as_object().ok_or_else(|| parse_err("function file must be an object"))?;
    check_keys(obj, &["mode", "terms", "per_facet"], "function")?;
    let f = if let Some(pf) = obj.get("per_facet") {
        if obj.contains_key("terms") || obj.contains_key("mode") {
            return Err(parse_err("per_facet cannot be combined with mode or terms"));
        }
        let mut pieces = Vec::new();
        for p in expect_array(pf, "per_facet")? {
            let po = p.as_object().ok_or_else(|| parse_err("per_facet entries must be objects"))?;
            check_keys(po, &["cell_id", "linear", "constant"], "per_facet entry")?;
            let id = parse_usize(po.get("cell_id").ok_or_else(|| parse_err("missing cell_id"))?, "cell_id")?;
            let linear = parse_rational_list(po.get("linear").ok_or_else(|| parse_err("missing linear"))?, "linear")?;
            let constant = match po.get("constant") {
                Some(c) => rational_from_json(c)?,
                None => Rational::zero(),
            };
            pieces.push((id, AffinePiece { linear, constant }));
        }
        PLFunction::PerFacet { pieces }
    } else {
        let mode = match obj.get("mode").map(|m| m.as_str()) {
            None | Some(Some("max")) => Mode::Max,
            Some(Some("min")) => Mode::Min,
            _ => return Err(parse_err("mode must be \"max\" or \"min\"")),
        };
        let mut terms = Vec::new();
        for t in expect_array(obj.get("terms").ok_or_else(|| parse_err("missing terms"))?, "terms")? {
            let to = t.as_object().ok_or_else(|| parse_err("terms must be objects"))?;
            check_keys(to, &["coeff", "exponents"], "term")?;
            let constant = match to.get("coeff") {
                Some(c) => rational_from_json(c)?,
                None => Rational::zero(),
            };
            let linear = parse_rational_list(
                to.get("exponents").ok_or_else(|| parse_err("missing exponents"))?,
                "exponents",
            )?;
            terms.push(AffinePiece { linear, constant });
        }
        if terms.is_empty() {
            return Err(parse_err("a tropical polynomial needs at least one term"));
        }
        PLFunction::Tropical { mode, terms }
    };
    let lens: Vec<usize> = match &f {
        PLFunction::Tropical { terms, .. } => terms.iter().map(|t| t.linear.len()).collect(),
        PLFunction::PerFacet { pieces } => pieces.iter().map(|p| p.1.linear.len()).collect(),
    };
    if lens.windows(2).any(|w| w[0] != w[1]) {
        return Err(parse_err("all terms must have the same number of variables"));
    }
    Ok(f)
}

pub fn plfunction_from_str(s: &str) -> Result<PLFunction> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    plfunction_from_json(&v)
}

pub fn load_plfunction(path: &std::path::Path) -> Result<PLFunction> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    plfunction_from_str(&s)
}

fn piece_json(p: &AffinePiece) -> (Value, Value) {
    (
        Value::Array(p.linear.iter().map(rational_to_json).collect()),
        rational_to_json(&p.constant),
    )
}

pub fn plfunction_to_json(f: &PLFunction) -> Value {
    match f {
        PLFunction::Tropical { mode, terms } => json!({
            "mode": match mode { Mode::Max => "max", Mode::Min => "min" },
            "terms": terms.iter().map(|t| {
                let (l, c) = piece_json(t);
                json!({"coeff": c, "exponents": l})
            }).collect::<Vec<_>>(),
        }),
        PLFunction::PerFacet { pieces } => json!({
            "per_facet": pieces.iter().map(|(id, p)| {
                let (l, c) = piece_json(p);
                json!({"cell_id": id, "linear": l, "constant": c})
            }).collect::<Vec<_>>(),
        }),
    }
}
