//! The fundamental cycle, the degree map on top compact cochains, and duality reports.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::rational::{int_to_rat, ints_to_rats, rational_to_json, Rational};
use tropcoh_core::linalg::wedge::{project_wedge, wedge_of, WedgeBasis};
use tropcoh_core::polyhedral::{balancing_report, incidence_sign, BalancingFailure, PolyhedralComplex};

use super::betti::{betti_tables, BettiTable};
use super::engines::cellular_layout;
use super::multitangent::MultiTangent;
use super::sheaf::build_sheaf;

/// `ω_sigma`: the wedge of the orientation basis in subset coordinates of `⋀^n Q^r`.
pub fn orientation_wedge(c: &PolyhedralComplex, sigma: usize) -> Vec<Rational> {
    let cell = c.cell(sigma);
    let basis = WedgeBasis::new(c.ambient_dim(), cell.dim());
    let vs: Vec<Vec<Rational>> = cell.orientation.iter().map(|v| ints_to_rats(v)).collect();
    let refs: Vec<&[Rational]> = vs.iter().map(Vec::as_slice).collect();
    wedge_of(&refs, &basis)
}

/// `∂(Σ m_sigma sigma ⊗ ω_sigma)` as a map from codimension-one cells to nonzero vectors in
/// subset coordinates of `⋀^n Q^r`.
pub fn fundamental_cycle_boundary(c: &PolyhedralComplex) -> Result<BTreeMap<usize, Vec<Rational>>> {
    c.require_pure()?;
    let n = c.dim();
    let basis = WedgeBasis::new(c.ambient_dim(), n);
    let mut out: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    if n == 0 {
        return Ok(out);
    }
    for s in c.facets() {
        let m = int_to_rat(c.weight(s).expect("facets are weighted"));
        let omega = orientation_wedge(c, s);
        for &t in &c.cell(s).faces {
            let sign = Rational::from_integer(incidence_sign(c, t, s)?.into());
            let killed: Vec<usize> = c
                .cell(t)
                .sedentarity()
                .iter()
                .copied()
                .filter(|i| !c.cell(s).sedentarity().contains(i))
                .collect();
            let image = project_wedge(&omega, &basis, &killed)?;
            let entry = out.entry(t).or_insert_with(|| vec![Rational::zero(); basis.len()]);
            for (e, x) in entry.iter_mut().zip(&image) {
                *e += &sign * &m * x;
            }
        }
    }
    out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    Ok(out)
}

/// The linear functional `c -> Σ m_sigma <c_sigma, ω_sigma>` on `C^n_c` for `p = n`, as a
/// dense row in the cellular layout.
pub fn degree_functional(c: &PolyhedralComplex) -> Result<Vec<Rational>> {
    c.require_pure()?;
    let n = c.dim();
    let mt = MultiTangent::new(c, n);
    let sheaf = build_sheaf(c, n)?;
    let layout = cellular_layout(&sheaf);
    let mut row = vec![Rational::zero(); layout.dims[n]];
    for s in c.facets() {
        let space = &mt.spaces[s];
        if space.dim() != 1 {
            return Err(Error::InternalConsistency("top multi-tangent space of a facet is not a line".into()));
        }
        let omega = orientation_wedge(c, s);
        let coord = space
            .coordinates(&omega)
            .ok_or_else(|| Error::InternalConsistency("orientation outside the top wedge".into()))?;
        row[layout.offset[s]] = int_to_rat(c.weight(s).expect("weighted")) * &coord[0];
    }
    Ok(row)
}

fn require_balanced(c: &PolyhedralComplex) -> Result<()> {
    let r = balancing_report(c)?;
    if r.balanced {
        Ok(())
    } else {
        Err(Error::BalancingRequired(format!(
            "{} codimension-one cells fail balancing",
            r.failures.len()
        )))
    }
}

/// Degree of a top compact cochain given in the cellular layout for `p = q = n`.
pub fn degree(c: &PolyhedralComplex, cochain: &[Rational]) -> Result<Rational> {
    require_balanced(c)?;
    degree_unchecked(c, cochain)
}

/// The same pairing without the balancing precondition; useful to exhibit failures.
pub fn degree_unchecked(c: &PolyhedralComplex, cochain: &[Rational]) -> Result<Rational> {
    let f = degree_functional(c)?;
    if f.len() != cochain.len() {
        return Err(Error::Dimension(format!(
            "cochain of length {} against {} top cochain coordinates",
            cochain.len(),
            f.len()
        )));
    }
    Ok(f.iter().zip(cochain).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

/// The top cochain supported on one facet with `<c_sigma, ω_sigma> = 1`.
pub fn unit_top_cochain(c: &PolyhedralComplex, sigma: usize) -> Result<Vec<Rational>> {
    let n = c.dim();
    let mt = MultiTangent::new(c, n);
    let sheaf = build_sheaf(c, n)?;
    let layout = cellular_layout(&sheaf);
    let omega = orientation_wedge(c, sigma);
    let coord = mt.spaces[sigma]
        .coordinates(&omega)
        .ok_or_else(|| Error::InternalConsistency("orientation outside the top wedge".into()))?;
    let mut v = vec![Rational::zero(); layout.dims[n]];
    v[layout.offset[sigma]] = coord[0].recip();
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdComparison {
    pub p: usize,
    pub q: usize,
    pub ordinary: usize,
    pub compact_dual: usize,
}

#[derive(Clone, Debug)]
pub struct PdReport {
    pub n: usize,
    pub ordinary: BettiTable,
    pub compact: BettiTable,
    pub pure: bool,
    pub balanced: bool,
    pub balancing_failures: Vec<BalancingFailure>,
    pub comparisons: Vec<PdComparison>,
    pub pd_holds: bool,
    pub canonical_degree: Option<Rational>,
    pub degree_nondegenerate: bool,
}

pub fn pd_report(c: &PolyhedralComplex) -> Result<PdReport> {
    let (ordinary, compact) = betti_tables(c)?;
    let n = c.dim();
    let mut comparisons = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            comparisons.push(PdComparison {
                p,
                q,
                ordinary: ordinary.get(p, q),
                compact_dual: compact.get(n - p, n - q),
            });
        }
    }
    let pd_holds = comparisons.iter().all(|x| x.ordinary == x.compact_dual);
    let pure = c.is_pure();
    let (balanced, failures) = if pure {
        let r = balancing_report(c)?;
        (r.balanced, r.failures)
    } else {
        (false, Vec::new())
    };
    let canonical_degree = if balanced {
        let first = c.facets()[0];
        Some(degree(c, &unit_top_cochain(c, first)?)?)
    } else {
        None
    };
    let degree_nondegenerate =
        balanced && compact.get(n, n) == 1 && canonical_degree.as_ref().is_some_and(|d| !d.is_zero());
    Ok(PdReport {
        n,
        ordinary,
        compact,
        pure,
        balanced,
        balancing_failures: failures,
        comparisons,
        pd_holds,
        canonical_degree,
        degree_nondegenerate,
    })
}

fn int_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| rational_to_json(&int_to_rat(x))).collect())
}

impl PdReport {
    pub fn to_json(&self, c: &PolyhedralComplex) -> Value {
        let mismatches: Vec<Value> = self
            .comparisons
            .iter()
            .filter(|x| x.ordinary != x.compact_dual)
            .map(|x| {
                json!({
                    "p": x.p, "q": x.q,
                    "h": x.ordinary,
                    "dual_p": self.n - x.p, "dual_q": self.n - x.q,
                    "h_c": x.compact_dual,
                })
            })
            .collect();
        let per_pq: Vec<Value> = self
            .comparisons
            .iter()
            .map(|x| {
                json!({
                    "p": x.p, "q": x.q, "h": x.ordinary, "h_c_dual": x.compact_dual,
                    "verdict": if x.ordinary == x.compact_dual { "PASS" } else { "FAIL" },
                })
            })
            .collect();
        let failures: Vec<Value> = self
            .balancing_failures
            .iter()
            .map(|f| json!({"cell": c.describe_cell(f.cell), "defect": int_json(&f.defect)}))
            .collect();
        json!({
            "n": self.n,
            "ordinary": self.ordinary.to_json(),
            "compact": self.compact.to_json(),
            "pure": self.pure,
            "balanced": self.balanced,
            "balancing_failures": failures,
            "pd_verdict": if self.pd_holds { "PASS" } else { "FAIL" },
            "pd_per_pq": per_pq,
            "pd_mismatches": mismatches,
            "canonical_degree": self.canonical_degree.as_ref().map(rational_to_json).unwrap_or(Value::Null),
            "degree_nondegenerate": self.degree_nondegenerate,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.ordinary.to_text());
        s.push_str(&self.compact.to_text());
        s.push_str(&format!("balanced: {}\n", if self.balanced { "yes" } else { "no" }));
        for x in &self.comparisons {
            s.push_str(&format!(
                "PD (p,q)=({},{}) vs ({},{})_c: {} vs {} {}\n",
                x.p,
                x.q,
                self.n - x.p,
                self.n - x.q,
                x.ordinary,
                x.compact_dual,
                if x.ordinary == x.compact_dual { "ok" } else { "MISMATCH" }
            ));
        }
        s.push_str(&format!("PD verdict: {}\n", if self.pd_holds { "PASS" } else { "FAIL" }));
        match &self.canonical_degree {
            Some(d) => s.push_str(&format!(
                "degree of canonical top cochain: {}\n",
                tropcoh_core::linalg::rational::format_rational(d)
            )),
            None => s.push_str("degree of canonical top cochain: undefined (not balanced)\n"),
        }
        s.push_str(&format!(
            "degree nondegenerate on top compact cohomology: {}\n",
            if self.degree_nondegenerate { "yes" } else { "no" }
        ));
        s
    }
}
