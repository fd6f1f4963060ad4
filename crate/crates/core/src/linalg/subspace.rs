//! Linear subspaces of Q^n in canonical reduced echelon form.

use num_traits::Zero;

use super::matrix::RationalMatrix;
use super::rational::{is_zero_vec, Rational};
use crate::error::{Error, Result};

/// A subspace stored by its reduced row echelon basis, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis: Vec<Vec<Rational>> = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = num_traits::One::one();
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = RationalMatrix::from_rows(ambient_dim, vectors)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the component along the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wj, bj) in w.iter_mut().zip(b) {
                if !bj.is_zero() {
                    *wj -= &f * bj;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` with respect to the echelon basis.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_coordinates(&self, c: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ambient_dim];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (vj, bj) in v.iter_mut().zip(b) {
                *vj += ci * bj;
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(ambient_dim: usize, parts: &[&Subspace]) -> Result<Self> {
        let mut vs = Vec::new();
        for p in parts {
            if p.ambient_dim != ambient_dim {
                return Err(Error::Dimension("summing subspaces of different ambient spaces".into()));
            }
            vs.extend(p.basis.iter().cloned());
        }
        Self::span(ambient_dim, &vs)
    }

    /// The annihilator with respect to the standard pairing.
    pub fn orthogonal_complement(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient_dim);
        }
        RationalMatrix::from_rows(self.ambient_dim, &self.basis)
            .expect("basis rows")
            .kernel()
    }

    pub fn intersection(&self, other: &Subspace) -> Self {
        let mut eqs: Vec<Vec<Rational>> = self.orthogonal_complement().basis;
        eqs.extend(other.orthogonal_complement().basis);
        if eqs.is_empty() {
            return Self::full(self.ambient_dim);
        }
        RationalMatrix::from_rows(self.ambient_dim, &eqs)
            .expect("rows")
            .kernel()
    }

    /// Image under the map zeroing the given coordinates.
    pub fn project_away(&self, coords: &[usize]) -> Self {
        let vs: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| {
                let mut b = b.clone();
                for &c in coords {
                    b[c] = Rational::zero();
                }
                b
            })
            .collect();
        Self::span(self.ambient_dim, &vs).expect("same ambient")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rats;

    #[test]
    fn canonical_form_is_independent_of_generators() {
        let a = Subspace::span(3, &[rats(&[1, 1, 0]), rats(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[rats(&[1, 2, 1]), rats(&[1, 0, -1]), rats(&[2, 2, 0])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_and_complement() {
        let a = Subspace::span(3, &[rats(&[1, 0, 0]), rats(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[rats(&[0, 1, 0]), rats(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersection(&b), Subspace::span(3, &[rats(&[0, 1, 0])]).unwrap());
        assert_eq!(a.orthogonal_complement(), Subspace::span(3, &[rats(&[0, 0, 1])]).unwrap());
        let s = Subspace::sum(3, &[&a, &b]).unwrap();
        assert_eq!(s.dim(), 3);
    }
}
