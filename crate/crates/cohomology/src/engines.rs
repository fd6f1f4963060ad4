//! Cochain complexes of a cellular sheaf: cellular cochains for compact support and
//! order-complex cochains for ordinary cohomology.

use std::collections::HashMap;

use num_traits::Zero;

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::rational::Rational;
use tropcoh_core::linalg::SparseMatrix;

use super::sheaf::CellularSheafDatum;

/// A finite cochain complex `C^0 -> C^1 -> ...` of rational vector spaces.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    /// `differentials[q]` maps `C^q` to `C^{q+1}`.
    pub differentials: Vec<SparseMatrix>,
}

impl CochainComplex {
    pub fn square_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.iter().map(SparseMatrix::rank).collect()
    }

    pub fn cohomology(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|q| {
                let out = ranks.get(q).copied().unwrap_or(0);
                let inc = if q == 0 { 0 } else { ranks[q - 1] };
                self.dims[q] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Offsets of each cell's block inside `C^q = ⊕_{dim sigma = q} F(sigma)`.
pub struct CellularLayout {
    pub offset: Vec<usize>,
    pub dims: Vec<usize>,
}

pub fn cellular_layout(d: &CellularSheafDatum) -> CellularLayout {
    let top = d.max_dim();
    let mut dims = vec![0; top + 1];
    let mut offset = vec![0; d.len()];
    for (i, c) in d.cells.iter().enumerate() {
        offset[i] = dims[c.dim];
        dims[c.dim] += c.space_dim;
    }
    CellularLayout { offset, dims }
}

/// `(δc)_sigma = Σ_{tau ≺ sigma} [tau:sigma] r_{tau sigma}(c_tau)`.
pub fn compact_cochain_complex(d: &CellularSheafDatum) -> CochainComplex {
    let sheaf = d.to_sheaf();
    let layout = cellular_layout(&sheaf);
    let top = layout.dims.len();
    let mut differentials: Vec<SparseMatrix> = (0..top.saturating_sub(1))
        .map(|q| SparseMatrix::new(layout.dims[q + 1], layout.dims[q]))
        .collect();
    for (&(t, s), rel) in &sheaf.relations {
        let q = sheaf.cells[t].dim;
        let m = &rel.matrix;
        let sign = Rational::from_integer(rel.sign.into());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    differentials[q].add(layout.offset[s] + i, layout.offset[t] + j, v * &sign);
                }
            }
        }
    }
    CochainComplex {
        dims: layout.dims,
        differentials,
    }
}

/// All strict chains `sigma_0 < ... < sigma_q`, grouped by length.
pub fn strict_chains(d: &CellularSheafDatum) -> Vec<Vec<Vec<usize>>> {
    let n = d.len();
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        for &t in d.below(s) {
            above[t].push(s);
        }
    }
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|i| vec![i]).collect()];
    loop {
        let last = levels.last().expect("nonempty");
        let mut next = Vec::new();
        for ch in last {
            let end = *ch.last().expect("nonempty chain");
            for &s in &above[end] {
                let mut c = ch.clone();
                c.push(s);
                next.push(c);
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        levels.push(next);
    }
    levels
}

/// Order-complex cochains: a q-cochain assigns to each chain `sigma_0 < ... < sigma_q` an element
/// of `F(sigma_q)`, and
/// `(δc)(sigma_0..sigma_{q+1}) = Σ_{i ≤ q} (-1)^i c(.. omit sigma_i ..)
///     + (-1)^{q+1} r_{sigma_q sigma_{q+1}} c(sigma_0..sigma_q)`.
pub fn ordinary_cochain_complex(d: &CellularSheafDatum) -> Result<CochainComplex> {
    let sheaf = d.to_sheaf();
    let maps = sheaf.composite_maps()?;
    let levels = strict_chains(&sheaf);
    let mut index: Vec<HashMap<&[usize], usize>> = Vec::with_capacity(levels.len());
    let mut dims = Vec::with_capacity(levels.len());
    for lvl in &levels {
        let mut idx = HashMap::with_capacity(lvl.len());
        let mut off = 0;
        for ch in lvl {
            idx.insert(ch.as_slice(), off);
            off += sheaf.cells[*ch.last().expect("chain")].space_dim;
        }
        index.push(idx);
        dims.push(off);
    }
    let mut differentials = Vec::new();
    for q in 0..levels.len().saturating_sub(1) {
        let mut m = SparseMatrix::new(dims[q + 1], dims[q]);
        for ch in &levels[q + 1] {
            let row0 = index[q + 1][ch.as_slice()];
            let last = *ch.last().expect("chain");
            let fdim = sheaf.cells[last].space_dim;
            if fdim == 0 {
                continue;
            }
            for i in 0..=q {
                let mut sub = ch.clone();
                sub.remove(i);
                let col0 = index[q][sub.as_slice()];
                let sgn = if i % 2 == 0 { 1 } else { -1 };
                for k in 0..fdim {
                    m.add(row0 + k, col0 + k, Rational::from_integer(sgn.into()));
                }
            }
            let prev = ch[q];
            let col0 = index[q][&ch[..=q]];
            let r = maps
                .get(&(prev, last))
                .ok_or_else(|| Error::InternalConsistency("missing composite map".into()))?;
            let sgn = Rational::from_integer(if (q + 1) % 2 == 0 { 1 } else { -1 }.into());
            for a in 0..r.nrows() {
                for b in 0..r.ncols() {
                    let v = r.get(a, b);
                    if !v.is_zero() {
                        m.add(row0 + a, col0 + b, v * &sgn);
                    }
                }
            }
        }
        differentials.push(m);
    }
    Ok(CochainComplex { dims, differentials })
}

pub fn compact_cohomology(d: &CellularSheafDatum) -> Result<Vec<usize>> {
    let cx = compact_cochain_complex(d);
    if !cx.square_zero() {
        return Err(Error::Validation(
            "cellular coboundary does not square to zero; check incidence signs".into(),
        ));
    }
    Ok(cx.cohomology())
}

pub fn ordinary_cohomology(d: &CellularSheafDatum) -> Result<Vec<usize>> {
    let cx = ordinary_cochain_complex(d)?;
    Ok(cx.cohomology())
}
