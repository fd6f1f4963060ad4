//! Multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use tropcoh_core::linalg::rational::Rational;
use tropcoh_core::linalg::RationalMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    /// Exponent vector to nonzero coefficient.
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn monomial(coeff: Rational, exponents: Vec<u32>) -> Self {
        let mut p = Poly::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let m = e
                .iter()
                .zip(x)
                .fold(Rational::one(), |m, (k, xi)| m * num_traits::pow(xi.clone(), *k as usize));
            acc + c * m
        })
    }

    /// `p(A y + b)` as a polynomial in `y`, with `A` of shape `nvars × m`.
    pub fn compose_affine(&self, a: &RationalMatrix, b: &[Rational]) -> Poly {
        let m = a.ncols();
        let lin: Vec<Poly> = (0..self.nvars)
            .map(|j| {
                let mut p = Poly::constant(m, b[j].clone());
                for k in 0..m {
                    p.add_term(unit(m, k), a.get(j, k).clone());
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<Poly>> = lin.iter().map(|l| vec![Poly::one(m), l.clone()]).collect();
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(m, c.clone());
            for (j, &k) in e.iter().enumerate() {
                while powers[j].len() <= k as usize {
                    let next = powers[j].last().expect("nonempty").mul(&lin[j]);
                    powers[j].push(next);
                }
                term = term.mul(&powers[j][k as usize]);
            }
            out = out.add(&term);
        }
        out
    }
}

fn unit(m: usize, k: usize) -> Vec<u32> {
    let mut e = vec![0; m];
    e[k] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropcoh_core::linalg::rational::{rat, rats};

    #[test]
    fn derivative_and_eval() {
        // p = 3 x^2 y + y
        let mut p = Poly::zero(2);
        p.add_term(vec![2, 1], rat(3));
        p.add_term(vec![0, 1], rat(1));
        assert_eq!(p.derivative(0).eval(&rats(&[2, 5])), rat(60));
        assert_eq!(p.derivative(1).eval(&rats(&[2, 5])), rat(13));
        assert_eq!(p.eval(&rats(&[2, 5])), rat(65));
    }

    #[test]
    fn composition_matches_evaluation() {
        let mut p = Poly::zero(2);
        p.add_term(vec![2, 1], rat(3));
        p.add_term(vec![1, 0], rat(-1));
        let a = RationalMatrix::from_i64_rows(2, &[vec![1, 2], vec![0, -1]]);
        let b = rats(&[1, 1]);
        let q = p.compose_affine(&a, &b);
        let y = rats(&[2, 3]);
        let x: Vec<Rational> = (0..2)
            .map(|j| (0..2).fold(b[j].clone(), |acc, k| acc + a.get(j, k) * &y[k]))
            .collect();
        assert_eq!(q.eval(&y), p.eval(&x));
    }
}
