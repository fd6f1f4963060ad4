//! Betti tables `h^{p,q}` and `h^{p,q}_c` of complexes.

use rayon::prelude::*;
use serde_json::{json, Value};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::polyhedral::io::complex_hash;
use tropcoh_core::polyhedral::PolyhedralComplex;

use super::engines::{compact_cohomology, ordinary_cohomology};
use super::sheaf::build_sheaf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Ordinary,
    Compact,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Ordinary => "ordinary",
            Flavor::Compact => "compact",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub flavor: Flavor,
    pub n: usize,
    /// `h[p][q]` for `0 <= p, q <= n`.
    pub h: Vec<Vec<usize>>,
    pub complex_hash: Option<String>,
}

impl BettiTable {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.h.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    /// Equality of the numbers, ignoring provenance.
    pub fn same_numbers(&self, other: &BettiTable) -> bool {
        self.flavor == other.flavor && self.n == other.n && self.h == other.h
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "flavor": self.flavor.name(),
            "n": self.n,
            "h": self.h,
        });
        if let Some(hash) = &self.complex_hash {
            v.as_object_mut()
                .expect("object")
                .insert("complex_hash".into(), Value::String(hash.clone()));
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let flavor = match v.get("flavor").and_then(Value::as_str) {
            Some("ordinary") => Flavor::Ordinary,
            Some("compact") => Flavor::Compact,
            _ => return Err(Error::Parse("betti table needs flavor ordinary or compact".into())),
        };
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("betti table needs n".into()))? as usize;
        let h: Vec<Vec<usize>> = serde_json::from_value(v.get("h").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Parse(format!("betti entries: {e}")))?;
        Ok(BettiTable {
            flavor,
            n,
            h,
            complex_hash: v.get("complex_hash").and_then(Value::as_str).map(str::to_string),
        })
    }

    /// Aligned text grid, rows indexed by p and columns by q.
    pub fn to_text(&self) -> String {
        let width = self
            .h
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1)
            .max(format!("q={}", self.n).len());
        let mut s = format!("{} (n = {})\n", self.flavor.name(), self.n);
        s.push_str(&" ".repeat(format!("p={}", self.n).len()));
        for q in 0..=self.n {
            s.push_str(&format!(" {:>width$}", format!("q={q}")));
        }
        s.push('\n');
        for (p, row) in self.h.iter().enumerate() {
            s.push_str(&format!("p={p:<w$}", w = format!("{}", self.n).len()));
            for x in row {
                s.push_str(&format!(" {x:>width$}"));
            }
            s.push('\n');
        }
        s
    }
}

fn pad(v: Vec<usize>, n: usize, what: &str) -> Result<Vec<usize>> {
    if v.iter().skip(n + 1).any(|&x| x != 0) {
        return Err(Error::InternalConsistency(format!(
            "{what} cohomology above degree {n}: {v:?}"
        )));
    }
    let mut v: Vec<usize> = v.into_iter().take(n + 1).collect();
    v.resize(n + 1, 0);
    Ok(v)
}

/// Compact row `h^{p,*}_c` for one `p`.
pub fn compact_row(c: &PolyhedralComplex, p: usize) -> Result<Vec<usize>> {
    pad(compact_cohomology(&build_sheaf(c, p)?)?, c.dim(), "compact")
}

/// Ordinary row `h^{p,*}` for one `p`.
pub fn ordinary_row(c: &PolyhedralComplex, p: usize) -> Result<Vec<usize>> {
    pad(ordinary_cohomology(&build_sheaf(c, p)?)?, c.dim(), "ordinary")
}

pub fn compact_table(c: &PolyhedralComplex) -> Result<BettiTable> {
    let n = c.dim();
    let h = (0..=n).into_par_iter().map(|p| compact_row(c, p)).collect::<Result<Vec<_>>>()?;
    Ok(BettiTable {
        flavor: Flavor::Compact,
        n,
        h,
        complex_hash: Some(complex_hash(c)),
    })
}

pub fn ordinary_table(c: &PolyhedralComplex) -> Result<BettiTable> {
    let n = c.dim();
    let h = (0..=n).into_par_iter().map(|p| ordinary_row(c, p)).collect::<Result<Vec<_>>>()?;
    Ok(BettiTable {
        flavor: Flavor::Ordinary,
        n,
        h,
        complex_hash: Some(complex_hash(c)),
    })
}

/// Both tables, ordinary first.
pub fn betti_tables(c: &PolyhedralComplex) -> Result<(BettiTable, BettiTable)> {
    let (o, k) = rayon::join(|| ordinary_table(c), || compact_table(c));
    Ok((o?, k?))
}
