//! Exterior powers of Q^n in the basis of lexicographically ordered index subsets.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// The p-subsets of `0..n` in lexicographic order with a reverse lookup.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    ambient_dim: usize,
    degree: usize,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

pub fn subsets_of_size(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    rec(0, n, p, &mut cur, &mut out);
    out
}

impl WedgeBasis {
    pub fn new(ambient_dim: usize, degree: usize) -> Self {
        let subsets = subsets_of_size(ambient_dim, degree);
        let index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        WedgeBasis {
            ambient_dim,
            degree,
            subsets,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn index_of(&self, k: &[usize]) -> Option<usize> {
        self.index.get(k).copied()
    }
}

/// Sorts an index list and returns the permutation sign, or `None` on a repeated index.
pub fn sort_with_sign(k: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = k.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

fn minor(vectors: &[&[Rational]], cols: &[usize]) -> Rational {
    let p = vectors.len();
    let rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
        .collect();
    RationalMatrix::from_rows(p, &rows)
        .expect("square")
        .determinant()
        .expect("square")
}

/// Coordinates of `v_1 ∧ ... ∧ v_p` in the subset basis.
pub fn wedge_of(vectors: &[&[Rational]], basis: &WedgeBasis) -> Vec<Rational> {
    if basis.degree == 0 {
        return vec![Rational::one()];
    }
    basis.subsets.iter().map(|k| minor(vectors, k)).collect()
}

/// The p-th exterior power of a subspace as a subspace of the subset-basis coordinates.
pub fn wedge_power(s: &Subspace, p: usize) -> Subspace {
    let basis = WedgeBasis::new(s.ambient_dim(), p);
    if p == 0 {
        return Subspace::full(1);
    }
    if p > s.dim() {
        return Subspace::zero(basis.len());
    }
    let gens: Vec<Vec<Rational>> = subsets_of_size(s.dim(), p)
        .iter()
        .map(|choice| {
            let vs: Vec<&[Rational]> = choice.iter().map(|&i| s.basis()[i].as_slice()).collect();
            wedge_of(&vs, &basis)
        })
        .collect();
    Subspace::span(basis.len(), &gens).expect("shape")
}

/// The p-th compound matrix: entry (I, J) is the minor on rows I and columns J.
pub fn compound_matrix(a: &RationalMatrix, p: usize) -> RationalMatrix {
    let rs = subsets_of_size(a.nrows(), p);
    let cs = subsets_of_size(a.ncols(), p);
    let mut out = RationalMatrix::zeros(rs.len(), cs.len());
    for (i, r) in rs.iter().enumerate() {
        for (j, c) in cs.iter().enumerate() {
            let rows: Vec<Vec<Rational>> = r
                .iter()
                .map(|&ri| c.iter().map(|&cj| a.get(ri, cj).clone()).collect())
                .collect();
            let d = if p == 0 {
                Rational::one()
            } else {
                RationalMatrix::from_rows(p, &rows)
                    .expect("square")
                    .determinant()
                    .expect("square")
            };
            out.set(i, j, d);
        }
    }
    out
}

/// Applies the exterior power of the projection zeroing `killed` coordinates.
pub fn project_wedge(v: &[Rational], basis: &WedgeBasis, killed: &[usize]) -> Result<Vec<Rational>> {
    if v.len() != basis.len() {
        return Err(Error::Dimension("wedge vector length does not match basis".into()));
    }
    Ok(v.iter()
        .zip(&basis.subsets)
        .map(|(x, k)| {
            if k.iter().any(|i| killed.contains(i)) {
                Rational::zero()
            } else {
                x.clone()
            }
        })
        .collect())
}
