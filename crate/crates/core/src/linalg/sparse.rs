//! Sparse rational matrices with exact rank by incremental elimination.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;

type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to entry (i, j).
    pub fn add(&mut self, i: usize, j: usize, v: Rational) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(pos) => {
                row[pos].1 += v;
                if row[pos].1.is_zero() {
                    row.remove(pos);
                }
            }
            Err(pos) => row.insert(pos, (j, v)),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(pos) => self.data[i][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                t.data[*j].push((i, v.clone()));
            }
        }
        t
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "sparse matrix shapes");
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                }
            }
            let mut r: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            r.sort_by_key(|e| e.0);
            out.data[i] = r;
        }
        out
    }

    /// Exact rank. Rows are reduced against pivot rows keyed by their leading column.
    pub fn rank(&self) -> usize {
        let rows = if self.rows > self.cols {
            self.transpose().data
        } else {
            self.data.clone()
        };
        let mut order: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        order.sort_by_key(|r| r.len());
        let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
        for mut row in order {
            loop {
                let Some((lead, coeff)) = row.first().cloned() else { break };
                match pivots.get(&lead) {
                    Some(p) => row = axpy(&row, &coeff, p),
                    None => {
                        let inv = coeff.recip();
                        for e in row.iter_mut() {
                            e.1 *= &inv;
                        }
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// `row - c * pivot`, where the pivot row has leading coefficient one.
fn axpy(row: &[(usize, Rational)], c: &Rational, pivot: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            let v = -(c * &pivot[j].1);
            out.push((cj, v));
            j += 1;
        } else {
            let v = &row[i].1 - c * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    debug_assert!(out.first().map_or(true, |e| e.0 != row[0].0 || !pivot[0].1.is_one()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn sparse_rank_matches_dense() {
        let mut s = SparseMatrix::new(3, 4);
        s.add(0, 0, rat(1));
        s.add(0, 2, rat(2));
        s.add(1, 1, rat(3));
        s.add(2, 0, rat(2));
        s.add(2, 1, rat(3));
        s.add(2, 2, rat(4));
        assert_eq!(s.rank(), 2);
        assert_eq!(s.rank(), s.to_dense().rank());
        assert_eq!(s.transpose().rank(), 2);
    }

    #[test]
    fn add_cancels_entries() {
        let mut s = SparseMatrix::new(1, 2);
        s.add(0, 1, rat(2));
        s.add(0, 1, rat(-2));
        assert!(s.is_zero());
    }
}
