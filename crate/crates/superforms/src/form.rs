//! Superforms `Σ α_{KL} d'x_K ∧ d''x_L` with polynomial coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::rational::Rational;
use tropcoh_core::linalg::wedge::{compound_matrix, sort_with_sign, subsets_of_size};
use tropcoh_core::linalg::RationalMatrix;

use super::poly::Poly;

/// Index sets are sorted and 0-based.
pub type Key = (Vec<usize>, Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superform {
    ambient_dim: usize,
    p: usize,
    q: usize,
    terms: BTreeMap<Key, Poly>,
}

/// `y ↦ A y + b` from `R^{cols}` to `R^{rows}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: RationalMatrix,
    pub translation: Vec<Rational>,
}

impl AffineMap {
    pub fn new(linear: RationalMatrix, translation: Vec<Rational>) -> Result<Self> {
        if translation.len() != linear.nrows() {
            return Err(Error::Dimension("translation length differs from the target dimension".into()));
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            linear: RationalMatrix::identity(n),
            translation: vec![Rational::zero(); n],
        }
    }

    pub fn source_dim(&self) -> usize {
        self.linear.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.linear.nrows()
    }

    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        let mut x = self.linear.mul_vec(y).expect("point of the source dimension");
        for (xi, b) in x.iter_mut().zip(&self.translation) {
            *xi += b;
        }
        x
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        let linear = self.linear.mul(&other.linear)?;
        let translation = self.apply(&other.translation);
        Ok(AffineMap { linear, translation })
    }
}

impl Superform {
    pub fn zero(ambient_dim: usize, p: usize, q: usize) -> Self {
        Superform { ambient_dim, p, q, terms: BTreeMap::new() }
    }

    /// `f d'x_K ∧ d''x_L` for arbitrary index lists, reordered with sign.
    pub fn term(ambient_dim: usize, k: &[usize], l: &[usize], f: Poly) -> Result<Self> {
        let mut out = Superform::zero(ambient_dim, k.len(), l.len());
        if k.iter().chain(l).any(|&i| i >= ambient_dim) {
            return Err(Error::Dimension(format!("index outside 1..{ambient_dim}")));
        }
        if f.nvars() != ambient_dim {
            return Err(Error::Dimension("coefficient has the wrong number of variables".into()));
        }
        if let (Some((ks, s1)), Some((ls, s2))) = (sort_with_sign(k), sort_with_sign(l)) {
            out.add_term(ks, ls, f.scale(&Rational::from_integer((s1 * s2).into())));
        }
        Ok(out)
    }

    /// The function `f` as a (0,0)-form.
    pub fn function(f: Poly) -> Self {
        let n = f.nvars();
        let mut out = Superform::zero(n, 0, 0);
        out.add_term(vec![], vec![], f);
        out
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn terms(&self) -> &BTreeMap<Key, Poly> {
        &self.terms
    }

    pub fn coefficient(&self, k: &[usize], l: &[usize]) -> Poly {
        self.terms
            .get(&(k.to_vec(), l.to_vec()))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.ambient_dim))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: Vec<usize>, l: Vec<usize>, f: Poly) {
        if f.is_zero() {
            return;
        }
        let key = (k, l);
        let sum = match self.terms.remove(&key) {
            Some(g) => g.add(&f),
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    fn same_shape(&self, other: &Superform) -> Result<()> {
        if self.ambient_dim != other.ambient_dim || self.p != other.p || self.q != other.q {
            return Err(Error::Dimension("forms of different shape".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Superform) -> Result<Superform> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for ((k, l), f) in &other.terms {
            out.add_term(k.clone(), l.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Superform) -> Result<Superform> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Superform {
        let mut out = Superform::zero(self.ambient_dim, self.p, self.q);
        for ((k, l), f) in &self.terms {
            out.add_term(k.clone(), l.clone(), f.scale(s));
        }
        out
    }

    pub fn mul_function(&self, g: &Poly) -> Superform {
        let mut out = Superform::zero(self.ambient_dim, self.p, self.q);
        for ((k, l), f) in &self.terms {
            out.add_term(k.clone(), l.clone(), f.mul(g));
        }
        out
    }

    /// `d''(α d'x_K ∧ d''x_L) = (-1)^p Σ_i ∂_i α d'x_K ∧ d''x_i ∧ d''x_L`.
    pub fn d_second(&self) -> Superform {
        let mut out = Superform::zero(self.ambient_dim, self.p, self.q + 1);
        let outer = if self.p % 2 == 0 { 1 } else { -1 };
        for ((k, l), f) in &self.terms {
            for i in 0..self.ambient_dim {
                let df = f.derivative(i);
                if df.is_zero() {
                    continue;
                }
                let mut seq = vec![i];
                seq.extend(l.iter().copied());
                if let Some((ls, s)) = sort_with_sign(&seq) {
                    out.add_term(k.clone(), ls, df.scale(&Rational::from_integer((outer * s).into())));
                }
            }
        }
        out
    }

    /// `d'(α d'x_K ∧ d''x_L) = Σ_i ∂_i α d'x_i ∧ d'x_K ∧ d''x_L`.
    pub fn d_prime(&self) -> Superform {
        let mut out = Superform::zero(self.ambient_dim, self.p + 1, self.q);
        for ((k, l), f) in &self.terms {
            for i in 0..self.ambient_dim {
                let df = f.derivative(i);
                if df.is_zero() {
                    continue;
                }
                let mut seq = vec![i];
                seq.extend(k.iter().copied());
                if let Some((ks, s)) = sort_with_sign(&seq) {
                    out.add_term(ks, l.clone(), df.scale(&Rational::from_integer(s.into())));
                }
            }
        }
        out
    }

    /// `(α_{KL} d'x_K ∧ d''x_L) ∧ (β_{K'L'} d'x_{K'} ∧ d''x_{L'})
    ///   = (-1)^{p' q} α β d'x_K ∧ d'x_{K'} ∧ d''x_L ∧ d''x_{L'}`.
    pub fn wedge(&self, other: &Superform) -> Result<Superform> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension("forms on different spaces".into()));
        }
        let mut out = Superform::zero(self.ambient_dim, self.p + other.p, self.q + other.q);
        let base = if (other.p * self.q) % 2 == 0 { 1 } else { -1 };
        for ((k1, l1), f1) in &self.terms {
            for ((k2, l2), f2) in &other.terms {
                let kk: Vec<usize> = k1.iter().chain(k2).copied().collect();
                let ll: Vec<usize> = l1.iter().chain(l2).copied().collect();
                if let (Some((ks, s1)), Some((ls, s2))) = (sort_with_sign(&kk), sort_with_sign(&ll)) {
                    let s = Rational::from_integer((base * s1 * s2).into());
                    out.add_term(ks, ls, f1.mul(f2).scale(&s));
                }
            }
        }
        Ok(out)
    }

    /// Insertion of `v` into the `slot`-th d'-slot (1-based).
    pub fn contract(&self, v: &[Rational], slot: usize) -> Result<Superform> {
        if self.p == 0 {
            return Err(Error::Degree("contraction of a form with no d' part".into()));
        }
        if slot == 0 || slot > self.p {
            return Err(Error::Degree(format!("slot {slot} outside 1..{}", self.p)));
        }
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension("contraction vector of the wrong length".into()));
        }
        let slot_sign = if (slot - 1) % 2 == 0 { 1 } else { -1 };
        let mut out = Superform::zero(self.ambient_dim, self.p - 1, self.q);
        for ((k, l), f) in &self.terms {
            for (j, &kj) in k.iter().enumerate() {
                if v[kj].is_zero() {
                    continue;
                }
                let sign = slot_sign * if j % 2 == 0 { 1 } else { -1 };
                let mut rest = k.clone();
                rest.remove(j);
                out.add_term(rest, l.clone(), f.scale(&(&v[kj] * Rational::from_integer(sign.into()))));
            }
        }
        Ok(out)
    }

    /// Value on vectors: `d'` slots filled by `us`, `d''` slots by `ws`, at the point `x`.
    pub fn evaluate(&self, x: &[Rational], us: &[Vec<Rational>], ws: &[Vec<Rational>]) -> Result<Rational> {
        if us.len() != self.p || ws.len() != self.q {
            return Err(Error::Degree("wrong number of vectors".into()));
        }
        let minor = |idx: &[usize], vs: &[Vec<Rational>]| -> Result<Rational> {
            if idx.is_empty() {
                return Ok(Rational::one());
            }
            let rows: Vec<Vec<Rational>> = vs.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
            RationalMatrix::from_rows(idx.len(), &rows)?.determinant()
        };
        let mut total = Rational::zero();
        for ((k, l), f) in &self.terms {
            total += f.eval(x) * minor(k, us)? * minor(l, ws)?;
        }
        Ok(total)
    }

    /// `F^* α` for `F: R^{r'} → R^r`.
    pub fn pullback(&self, f: &AffineMap) -> Result<Superform> {
        if f.target_dim() != self.ambient_dim {
            return Err(Error::Dimension("map target differs from the form's space".into()));
        }
        let m = f.source_dim();
        let mut out = Superform::zero(m, self.p, self.q);
        let cp = compound_matrix(&f.linear, self.p);
        let cq = compound_matrix(&f.linear, self.q);
        let rows_p = subsets_of_size(self.ambient_dim, self.p);
        let rows_q = subsets_of_size(self.ambient_dim, self.q);
        let cols_p = subsets_of_size(m, self.p);
        let cols_q = subsets_of_size(m, self.q);
        for ((k, l), g) in &self.terms {
            let gf = g.compose_affine(&f.linear, &f.translation);
            let ik = rows_p.iter().position(|s| s == k).expect("sorted key");
            let il = rows_q.iter().position(|s| s == l).expect("sorted key");
            for (a, kk) in cols_p.iter().enumerate() {
                let ck = cp.get(ik, a);
                if ck.is_zero() {
                    continue;
                }
                for (b, ll) in cols_q.iter().enumerate() {
                    let cl = cq.get(il, b);
                    if cl.is_zero() {
                        continue;
                    }
                    out.add_term(kk.clone(), ll.clone(), gf.scale(&(ck * cl)));
                }
            }
        }
        Ok(out)
    }
}
