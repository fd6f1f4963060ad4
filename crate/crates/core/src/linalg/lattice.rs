//! Integer matrices, Smith and Hermite normal forms, and lattices in Z^n.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RationalMatrix;
use super::rational::{
    extended_gcd_vec, int_to_rat, ints_to_rats, primitive, primitive_integer, Rational,
};
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row of length {} in an integer matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| super::rational::ints(r)).collect();
        Self::from_rows(cols, &rows).expect("consistent rows")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "integer matrix shapes");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let rows: Vec<Vec<Rational>> = (0..self.rows).map(|i| ints_to_rats(self.row(i))).collect();
        RationalMatrix::from_rows(self.cols, &rows).expect("shape")
    }

    pub fn determinant(&self) -> BigInt {
        self.to_rational()
            .determinant()
            .expect("square matrix")
            .to_integer()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + f * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + f * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// Smith normal form: `u * m * v == d` with `d` diagonal, nonnegative, each entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.get(i, j);
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { d: a, u, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t) / a.get(t, t));
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j) / a.get(t, t));
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            if let Some(i) = offender {
                let one = BigInt::one();
                a.add_row(t, i, &one);
                u.add_row(t, i, &one);
                continue;
            }
            if p.is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    SmithForm { d: a, u, v }
}

/// Basis of the integer kernel `{x in Z^n : m x = 0}` as columns of the Smith transform.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    let r = s.rank();
    (r..m.cols).map(|j| s.v.column(j)).collect()
}

/// Row Hermite normal form of the lattice spanned by the given rows (zero rows dropped).
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(cols: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut cur = 0;
    for c in 0..cols {
        if cur == a.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in cur..a.len() {
                if !a[i][c].is_zero() && best.map_or(true, |b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(cur, b);
            let mut done = true;
            for i in cur + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = &a[i][c] / &a[cur][c];
                let pivot_row = a[cur].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[cur][c].is_zero() {
            continue;
        }
        if a[cur][c].is_negative() {
            for x in a[cur].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = a[cur].clone();
        for i in 0..cur {
            let q = a[i][c].div_floor(&pivot_row[c]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        cur += 1;
        a.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    a
}

/// A sublattice of Z^n with a canonical Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn from_generators(ambient_dim: usize, gens: &[Vec<BigInt>]) -> Self {
        Lattice {
            ambient_dim,
            basis: hermite_normal_form(ambient_dim, gens),
        }
    }

    /// The saturated lattice `V ∩ Z^n`.
    pub fn integer_points(v: &Subspace) -> Self {
        let n = v.ambient_dim();
        if v.dim() == 0 {
            return Lattice {
                ambient_dim: n,
                basis: Vec::new(),
            };
        }
        let eqs: Vec<Vec<BigInt>> = v
            .orthogonal_complement()
            .basis()
            .iter()
            .map(|b| primitive_integer(b))
            .collect();
        let gens = if eqs.is_empty() {
            (0..n)
                .map(|i| {
                    let mut e = vec![BigInt::zero(); n];
                    e[i] = BigInt::one();
                    e
                })
                .collect()
        } else {
            integer_kernel(&IntMatrix::from_rows(n, &eqs).expect("shape"))
        };
        Self::from_generators(n, &gens)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rational_span(&self) -> Subspace {
        let b: Vec<Vec<Rational>> = self.basis.iter().map(|r| ints_to_rats(r)).collect();
        Subspace::span(self.ambient_dim, &b).expect("shape")
    }

    fn pivot(row: &[BigInt]) -> usize {
        row.iter().position(|x| !x.is_zero()).expect("nonzero row")
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot(row);
            let q = w[p].div_floor(&row[p]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        w
    }

    /// Integer coordinates in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let mut w = v.to_vec();
        let mut c = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = Self::pivot(row);
            let (q, r) = w[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
            c.push(q);
        }
        if w.iter().all(Zero::is_zero) {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_rational(&self, v: &[Rational]) -> bool {
        if v.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let w: Vec<BigInt> = v.iter().map(|x| x.to_integer()).collect();
        self.contains(&w)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// Lattice index `[outer : inner]` for full-rank inclusions of equal rank.
pub fn lattice_index(outer: &Lattice, inner: &Lattice) -> Result<BigInt> {
    if outer.rank() != inner.rank() || !inner.is_sublattice_of(outer) {
        return Err(Error::Codimension("index of a non-finite-index inclusion".into()));
    }
    if inner.rank() == 0 {
        return Ok(BigInt::one());
    }
    let rows: Vec<Vec<BigInt>> = inner
        .basis()
        .iter()
        .map(|b| outer.coordinates(b).expect("sublattice"))
        .collect();
    let m = IntMatrix::from_rows(outer.rank(), &rows)?;
    Ok(m.determinant().abs())
}

/// Primitive generator of `outer / inner` for a saturated corank-one inclusion, as a vector of
/// `outer` on the side of `witness`, reduced modulo `inner`.
pub fn lattice_quotient_primitive(
    outer: &Lattice,
    inner: &Lattice,
    witness: &[Rational],
) -> Result<Vec<BigInt>> {
    if outer.ambient_dim() != inner.ambient_dim() || witness.len() != outer.ambient_dim() {
        return Err(Error::Dimension("lattices and witness in different ambient spaces".into()));
    }
    if outer.rank() != inner.rank() + 1 {
        return Err(Error::Codimension(format!(
            "ranks {} and {} do not differ by one",
            outer.rank(),
            inner.rank()
        )));
    }
    let k = outer.rank();
    let mut coords = Vec::with_capacity(inner.rank());
    for b in inner.basis() {
        match outer.coordinates(b) {
            Some(c) => coords.push(c),
            None => return Err(Error::Codimension("inner lattice is not contained in outer".into())),
        }
    }
    let w = if coords.is_empty() {
        let mut w = vec![BigInt::zero(); k];
        w[0] = BigInt::one();
        w
    } else {
        let ker = integer_kernel(&IntMatrix::from_rows(k, &coords)?);
        if ker.len() != 1 {
            return Err(Error::Codimension("quotient does not have rank one".into()));
        }
        primitive(&ker[0])
    };
    let (_, mut y) = extended_gcd_vec(&w);
    let outer_basis: Vec<Vec<Rational>> = outer.basis().iter().map(|b| ints_to_rats(b)).collect();
    let bm = RationalMatrix::from_rows(outer.ambient_dim(), &outer_basis)?;
    let wc = bm
        .solve_left(witness)
        .ok_or_else(|| Error::Codimension("witness does not lie in the span of the outer lattice".into()))?;
    let side = wc
        .iter()
        .zip(&w)
        .fold(Rational::zero(), |acc, (c, wi)| acc + c * int_to_rat(wi));
    if side.is_zero() {
        return Err(Error::Codimension("witness lies in the span of the inner lattice".into()));
    }
    if side.is_negative() {
        for yi in y.iter_mut() {
            *yi = -yi.clone();
        }
    }
    let mut nu = vec![BigInt::zero(); outer.ambient_dim()];
    for (yi, b) in y.iter().zip(outer.basis()) {
        for (n, bj) in nu.iter_mut().zip(b) {
            *n += yi * bj;
        }
    }
    Ok(inner.reduce(&nu))
}

/// An integer solution `a` of `rows · a = b`, if one exists.
pub fn integer_solution(cols: usize, rows: &[Vec<BigInt>], b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if rows.len() != b.len() {
        return Err(Error::Dimension("right-hand side length differs from row count".into()));
    }
    if rows.is_empty() {
        return Ok(Some(vec![BigInt::zero(); cols]));
    }
    let m = IntMatrix::from_rows(cols, rows)?;
    let snf = smith_normal_form(&m);
    let k = rows.len();
    // U·M·V = D, so M·a = b becomes D·y = U·b with a = V·y.
    let ub: Vec<BigInt> = (0..k)
        .map(|i| (0..k).fold(BigInt::zero(), |acc, j| acc + snf.u.get(i, j) * &b[j]))
        .collect();
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..k {
        let d = if i < cols { snf.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !ub[i].is_zero() {
                return Ok(None);
            }
        } else {
            if !(&ub[i] % &d).is_zero() {
                return Ok(None);
            }
            y[i] = &ub[i] / &d;
        }
    }
    Ok(Some(
        (0..cols)
            .map(|i| (0..cols).fold(BigInt::zero(), |acc, j| acc + snf.v.get(i, j) * &y[j]))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{dot_int, ints, rats};

    #[test]
    fn smith_form_of_example() {
        let m = IntMatrix::from_i64_rows(2, &[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), ints(&[2, 4]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = hermite_normal_form(2, &[ints(&[2, 0]), ints(&[1, 1])]);
        let b = hermite_normal_form(2, &[ints(&[3, 1]), ints(&[-1, -1]), ints(&[4, 0])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![ints(&[1, 1]), ints(&[0, 2])]);
    }

    #[test]
    fn saturation_of_a_line() {
        let v = Subspace::span(2, &[rats(&[2, 4])]).unwrap();
        let l = Lattice::integer_points(&v);
        assert_eq!(l.basis(), &[ints(&[1, 2])]);
    }

    #[test]
    fn primitive_normal_example() {
        let outer = Lattice::integer_points(&Subspace::span(2, &[rats(&[1, 2])]).unwrap());
        let inner = Lattice::from_generators(2, &[]);
        let nu = lattice_quotient_primitive(&outer, &inner, &rats(&[1, 2])).unwrap();
        assert_eq!(nu, ints(&[1, 2]));
        let nu = lattice_quotient_primitive(&outer, &inner, &rats(&[-3, -6])).unwrap();
        assert_eq!(nu, ints(&[-1, -2]));
    }

    #[test]
    fn primitive_normal_rejects_codim_two() {
        let outer = Lattice::integer_points(&Subspace::full(2));
        let inner = Lattice::from_generators(2, &[]);
        assert!(matches!(
            lattice_quotient_primitive(&outer, &inner, &rats(&[1, 0])),
            Err(Error::Codimension(_))
        ));
    }

    #[test]
    fn index_of_sublattice() {
        let outer = Lattice::integer_points(&Subspace::full(2));
        let inner = Lattice::from_generators(2, &[ints(&[2, 0]), ints(&[0, 3])]);
        assert_eq!(lattice_index(&outer, &inner).unwrap(), BigInt::from(6));
    }

    #[test]
    fn integer_solutions() {
        let rows = vec![ints(&[1, 1, 0]), ints(&[0, 2, 2])];
        let a = integer_solution(3, &rows, &ints(&[3, 4])).unwrap().unwrap();
        assert_eq!(dot_int(&rows[0], &a), BigInt::from(3));
        assert_eq!(dot_int(&rows[1], &a), BigInt::from(4));
        assert!(integer_solution(3, &rows, &ints(&[3, 3])).unwrap().is_none());
    }
}
