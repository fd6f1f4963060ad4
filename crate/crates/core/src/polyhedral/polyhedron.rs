//! Rational polyhedra in the strata of tropical affine space.
//!
//! A polyhedron with sedentarity `I` lives in the stratum where the coordinates in `I` equal
//! `-inf`. Those coordinates are stored as zero in every generator and every affine form.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dd::cone_generators;
use crate::error::{Error, Result};
use crate::linalg::rational::{
    dot_int, int_to_rat, ints_to_rats, primitive, primitive_integer, Rational,
};
use crate::linalg::{Lattice, Subspace};

/// The affine function `normal · x + constant`, read as `>= 0` or `= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    pub normal: Vec<BigInt>,
    pub constant: BigInt,
}

impl AffineForm {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .fold(int_to_rat(&self.constant), |acc, (a, xi)| acc + int_to_rat(a) * xi)
    }

    pub fn eval_direction(&self, v: &[BigInt]) -> BigInt {
        dot_int(&self.normal, v)
    }

    pub fn eval_direction_rational(&self, v: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, vi)| acc + int_to_rat(a) * vi)
    }

    /// Scales a rational form `normal · x + constant` to a primitive integer form.
    pub fn from_rational(normal: &[Rational], constant: &Rational) -> Self {
        let mut h = vec![constant.clone()];
        h.extend(normal.iter().cloned());
        let p = primitive_integer(&h);
        AffineForm {
            constant: p[0].clone(),
            normal: p[1..].to_vec(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Polyhedron {
    ambient_dim: usize,
    sedentarity: Vec<usize>,
    vertices: Vec<Vec<Rational>>,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    equalities: Vec<AffineForm>,
    facets: Vec<AffineForm>,
    tangent: Subspace,
    lattice: Lattice,
}

fn mobile_coords(ambient_dim: usize, sed: &[usize]) -> Vec<usize> {
    (0..ambient_dim).filter(|i| !sed.contains(i)).collect()
}

fn homogenize_point(x: &[Rational], mobile: &[usize]) -> Vec<BigInt> {
    let den = mobile.iter().fold(BigInt::one(), |l, &i| l.lcm(x[i].denom()));
    let mut h = vec![den.clone()];
    let d = int_to_rat(&den);
    h.extend(mobile.iter().map(|&i| (&x[i] * &d).to_integer()));
    primitive(&h)
}

fn homogenize_direction(v: &[BigInt], mobile: &[usize]) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero()];
    h.extend(mobile.iter().map(|&i| v[i].clone()));
    h
}

fn homogenize_form(f: &AffineForm, mobile: &[usize]) -> Vec<BigInt> {
    let mut h = vec![f.constant.clone()];
    h.extend(mobile.iter().map(|&i| f.normal[i].clone()));
    h
}

fn expand(ambient_dim: usize, mobile: &[usize], part: &[BigInt]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); ambient_dim];
    for (&i, x) in mobile.iter().zip(part) {
        v[i] = x.clone();
    }
    v
}

fn expand_rational(ambient_dim: usize, mobile: &[usize], part: &[Rational]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); ambient_dim];
    for (&i, x) in mobile.iter().zip(part) {
        v[i] = x.clone();
    }
    v
}

struct Canonical {
    vertices: Vec<Vec<Rational>>,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
}

/// Canonical generators from a homogenized cone description over the mobile coordinates.
fn canonical_generators(
    ambient_dim: usize,
    mobile: &[usize],
    eqs: &[Vec<BigInt>],
    ineqs: &[Vec<BigInt>],
) -> Option<Canonical> {
    let m = mobile.len();
    let mut all = ineqs.to_vec();
    let mut t = vec![BigInt::zero(); m + 1];
    t[0] = BigInt::one();
    all.push(t);
    let g = cone_generators(m + 1, eqs, &all);
    let lin_x: Vec<Vec<Rational>> = g.lineality.iter().map(|l| ints_to_rats(&l[1..])).collect();
    let lin_space = Subspace::span(m, &lin_x).expect("shape");
    let lineality: Vec<Vec<BigInt>> = lin_space
        .basis()
        .iter()
        .map(|b| expand(ambient_dim, mobile, &primitive_integer(b)))
        .collect();
    let mut vertices = BTreeSet::new();
    let mut rays = BTreeSet::new();
    for r in &g.rays {
        let x = ints_to_rats(&r[1..]);
        if r[0].is_zero() {
            let red = lin_space.reduce(&x);
            let p = primitive_integer(&red);
            if p.iter().any(|v| !v.is_zero()) {
                rays.insert(expand(ambient_dim, mobile, &p));
            }
        } else {
            let t = int_to_rat(&r[0]);
            let pt: Vec<Rational> = x.iter().map(|xi| xi / &t).collect();
            vertices.insert(expand_rational(ambient_dim, mobile, &lin_space.reduce(&pt)));
        }
    }
    if vertices.is_empty() {
        return None;
    }
    Some(Canonical {
        vertices: vertices.into_iter().collect(),
        rays: rays.into_iter().collect(),
        lineality,
    })
}

impl Polyhedron {
    pub fn from_generators(
        ambient_dim: usize,
        sedentarity: &[usize],
        vertices: &[Vec<Rational>],
        rays: &[Vec<BigInt>],
        lineality: &[Vec<BigInt>],
    ) -> Result<Self> {
        let sed: Vec<usize> = sedentarity.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if sed.iter().any(|&i| i >= ambient_dim) {
            return Err(Error::InvalidPolyhedron("sedentarity index out of range".into()));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidPolyhedron("a polyhedron needs at least one vertex".into()));
        }
        for v in vertices {
            if v.len() != ambient_dim {
                return Err(Error::Dimension(format!(
                    "vertex of length {} in ambient dimension {}",
                    v.len(),
                    ambient_dim
                )));
            }
            if sed.iter().any(|&i| !v[i].is_zero()) {
                return Err(Error::InvalidPolyhedron("finite value in a sedentary coordinate".into()));
            }
        }
        for r in rays.iter().chain(lineality) {
            if r.len() != ambient_dim {
                return Err(Error::Dimension(format!(
                    "direction of length {} in ambient dimension {}",
                    r.len(),
                    ambient_dim
                )));
            }
            if sed.iter().any(|&i| !r[i].is_zero()) {
                return Err(Error::InvalidPolyhedron(
                    "direction moves a sedentary coordinate".into(),
                ));
            }
        }
        let mobile = mobile_coords(ambient_dim, &sed);
        let m = mobile.len();
        let mut gens: Vec<Vec<BigInt>> = vertices.iter().map(|v| homogenize_point(v, &mobile)).collect();
        gens.extend(
            rays.iter()
                .map(|r| homogenize_direction(r, &mobile))
                .filter(|h| h.iter().any(|x| !x.is_zero())),
        );
        let lin: Vec<Vec<BigInt>> = lineality
            .iter()
            .map(|l| homogenize_direction(l, &mobile))
            .filter(|h| h.iter().any(|x| !x.is_zero()))
            .collect();
        let dual = cone_generators(m + 1, &lin, &gens);
        let eq_space = Subspace::span(
            m + 1,
            &dual.lineality.iter().map(|l| ints_to_rats(l)).collect::<Vec<_>>(),
        )
        .expect("shape");
        let eq_h: Vec<Vec<BigInt>> = eq_space.basis().iter().map(|b| primitive_integer(b)).collect();
        let mut facet_h = BTreeSet::new();
        for r in &dual.rays {
            let red = primitive_integer(&eq_space.reduce(&ints_to_rats(r)));
            if red[1..].iter().any(|x| !x.is_zero()) {
                facet_h.insert(red);
            }
        }
        let facet_h: Vec<Vec<BigInt>> = facet_h.into_iter().collect();
        let canon = canonical_generators(ambient_dim, &mobile, &eq_h, &facet_h)
            .ok_or_else(|| Error::InvalidPolyhedron("generators describe an empty set".into()))?;
        let to_form = |h: &Vec<BigInt>| AffineForm {
            constant: h[0].clone(),
            normal: expand(ambient_dim, &mobile, &h[1..]),
        };
        let equalities = eq_h.iter().map(to_form).collect();
        let facets = facet_h.iter().map(to_form).collect();
        Ok(Self::assemble(ambient_dim, sed, canon, equalities, facets))
    }

    fn assemble(
        ambient_dim: usize,
        sed: Vec<usize>,
        canon: Canonical,
        equalities: Vec<AffineForm>,
        facets: Vec<AffineForm>,
    ) -> Self {
        let v0 = canon.vertices[0].clone();
        let mut span: Vec<Vec<Rational>> = canon
            .vertices
            .iter()
            .skip(1)
            .map(|v| v.iter().zip(&v0).map(|(a, b)| a - b).collect())
            .collect();
        span.extend(canon.rays.iter().map(|r| ints_to_rats(r)));
        span.extend(canon.lineality.iter().map(|r| ints_to_rats(r)));
        let tangent = Subspace::span(ambient_dim, &span).expect("shape");
        let lattice = Lattice::integer_points(&tangent);
        Polyhedron {
            ambient_dim,
            sedentarity: sed,
            vertices: canon.vertices,
            rays: canon.rays,
            lineality: canon.lineality,
            equalities,
            facets,
            tangent,
            lattice,
        }
    }

    /// The polyhedron cut out by the given forms, or `None` when it is empty.
    pub fn from_hrep(
        ambient_dim: usize,
        sedentarity: &[usize],
        equalities: &[AffineForm],
        inequalities: &[AffineForm],
    ) -> Result<Option<Self>> {
        let sed: Vec<usize> = sedentarity.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        for f in equalities.iter().chain(inequalities) {
            if f.normal.len() != ambient_dim {
                return Err(Error::Dimension("affine form of the wrong length".into()));
            }
        }
        let mobile = mobile_coords(ambient_dim, &sed);
        let eqs: Vec<Vec<BigInt>> = equalities.iter().map(|f| homogenize_form(f, &mobile)).collect();
        let ineqs: Vec<Vec<BigInt>> = inequalities.iter().map(|f| homogenize_form(f, &mobile)).collect();
        match canonical_generators(ambient_dim, &mobile, &eqs, &ineqs) {
            None => Ok(None),
            Some(c) => Self::from_generators(ambient_dim, &sed, &c.vertices, &c.rays, &c.lineality).map(Some),
        }
    }

    pub fn point(x: &[Rational]) -> Self {
        Self::from_generators(x.len(), &[], &[x.to_vec()], &[], &[]).expect("a point is a polyhedron")
    }

    /// The whole space `R^n` with the given sedentary coordinates.
    pub fn whole_space(ambient_dim: usize, sedentarity: &[usize]) -> Self {
        let lin: Vec<Vec<BigInt>> = mobile_coords(ambient_dim, sedentarity)
            .into_iter()
            .map(|i| {
                let mut e = vec![BigInt::zero(); ambient_dim];
                e[i] = BigInt::one();
                e
            })
            .collect();
        Self::from_generators(ambient_dim, sedentarity, &[vec![Rational::zero(); ambient_dim]], &[], &lin)
            .expect("whole space")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn sedentarity(&self) -> &[usize] {
        &self.sedentarity
    }

    pub fn mobile_coords(&self) -> Vec<usize> {
        mobile_coords(self.ambient_dim, &self.sedentarity)
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn equalities(&self) -> &[AffineForm] {
        &self.equalities
    }

    pub fn facets(&self) -> &[AffineForm] {
        &self.facets
    }

    pub fn tangent(&self) -> &Subspace {
        &self.tangent
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.tangent.dim()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Inequalities over the mobile coordinates; each equality appears as a pair.
    pub fn hrep(&self) -> Vec<AffineForm> {
        let mut out = Vec::new();
        for e in &self.equalities {
            out.push(e.clone());
            out.push(AffineForm {
                normal: e.normal.iter().map(|x| -x).collect(),
                constant: -e.constant.clone(),
            });
        }
        out.extend(self.facets.iter().cloned());
        out
    }

    pub fn relative_interior_point(&self) -> Vec<Rational> {
        let n = int_to_rat(&BigInt::from(self.vertices.len()));
        let mut p = vec![Rational::zero(); self.ambient_dim];
        for v in &self.vertices {
            for (pi, vi) in p.iter_mut().zip(v) {
                *pi += vi;
            }
        }
        for pi in p.iter_mut() {
            *pi /= &n;
        }
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += int_to_rat(ri);
            }
        }
        p
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        x.len() == self.ambient_dim
            && self.sedentarity.iter().all(|&i| x[i].is_zero())
            && self.equalities.iter().all(|e| e.eval(x).is_zero())
            && self.facets.iter().all(|f| !f.eval(x).is_negative())
    }

    pub fn contains_direction(&self, v: &[BigInt]) -> bool {
        self.equalities.iter().all(|e| e.eval_direction(v).is_zero())
            && self.facets.iter().all(|f| !f.eval_direction(v).is_negative())
    }

    /// Containment of polyhedra with the same sedentarity.
    pub fn contains(&self, other: &Polyhedron) -> bool {
        if self.sedentarity != other.sedentarity || self.ambient_dim != other.ambient_dim {
            return false;
        }
        other.vertices.iter().all(|v| self.contains_point(v))
            && other.rays.iter().all(|r| self.contains_direction(r))
            && other.lineality.iter().all(|l| {
                self.equalities.iter().all(|e| e.eval_direction(l).is_zero())
                    && self.facets.iter().all(|f| f.eval_direction(l).is_zero())
            })
    }

    pub fn intersection(&self, other: &Polyhedron) -> Result<Option<Polyhedron>> {
        if self.sedentarity != other.sedentarity {
            return Ok(None);
        }
        let eqs: Vec<AffineForm> = self.equalities.iter().chain(&other.equalities).cloned().collect();
        let ineqs: Vec<AffineForm> = self.facets.iter().chain(&other.facets).cloned().collect();
        Polyhedron::from_hrep(self.ambient_dim, &self.sedentarity, &eqs, &ineqs)
    }

    /// Intersection with extra affine constraints.
    pub fn cut(&self, equalities: &[AffineForm], inequalities: &[AffineForm]) -> Result<Option<Polyhedron>> {
        let eqs: Vec<AffineForm> = self.equalities.iter().chain(equalities).cloned().collect();
        let ineqs: Vec<AffineForm> = self.facets.iter().chain(inequalities).cloned().collect();
        Polyhedron::from_hrep(self.ambient_dim, &self.sedentarity, &eqs, &ineqs)
    }

    /// All nonempty faces in the same stratum, including the polyhedron itself.
    pub fn faces(&self) -> Vec<Polyhedron> {
        let nv = self.vertices.len();
        let ngen = nv + self.rays.len();
        let tight: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut s = BTreeSet::new();
                for (i, v) in self.vertices.iter().enumerate() {
                    if f.eval(v).is_zero() {
                        s.insert(i);
                    }
                }
                for (j, r) in self.rays.iter().enumerate() {
                    if f.eval_direction(r).is_zero() {
                        s.insert(nv + j);
                    }
                }
                s
            })
            .collect();
        let full: BTreeSet<usize> = (0..ngen).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        seen.insert(full.clone());
        let mut queue = vec![full];
        let mut i = 0;
        while i < queue.len() {
            let cur = queue[i].clone();
            i += 1;
            for t in &tight {
                let next: BTreeSet<usize> = cur.intersection(t).copied().collect();
                if next.iter().any(|&g| g < nv) && seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        queue
            .into_iter()
            .map(|s| {
                let vs: Vec<Vec<Rational>> = s.iter().filter(|&&g| g < nv).map(|&g| self.vertices[g].clone()).collect();
                let rs: Vec<Vec<BigInt>> = s.iter().filter(|&&g| g >= nv).map(|&g| self.rays[g - nv].clone()).collect();
                Polyhedron::from_generators(self.ambient_dim, &self.sedentarity, &vs, &rs, &self.lineality)
                    .expect("faces of a polyhedron are polyhedra")
            })
            .collect()
    }

    /// Piece of the closure in the stratum with sedentarity `target`, if nonempty.
    pub fn stratum_piece(&self, target: &[usize]) -> Option<Polyhedron> {
        let target: BTreeSet<usize> = target.iter().copied().collect();
        let sed: BTreeSet<usize> = self.sedentarity.iter().copied().collect();
        if !sed.is_subset(&target) {
            return None;
        }
        if sed == target {
            return Some(self.clone());
        }
        let newly: Vec<usize> = target.difference(&sed).copied().collect();
        let mobile = self.mobile_coords();
        let mut eqs: Vec<Vec<BigInt>> = self
            .equalities
            .iter()
            .map(|e| mobile.iter().map(|&i| e.normal[i].clone()).collect())
            .collect();
        let mut ineqs: Vec<Vec<BigInt>> = self
            .facets
            .iter()
            .map(|f| mobile.iter().map(|&i| f.normal[i].clone()).collect())
            .collect();
        for (k, &i) in mobile.iter().enumerate() {
            let mut e = vec![BigInt::zero(); mobile.len()];
            if target.contains(&i) {
                e[k] = -BigInt::one();
                ineqs.push(e);
            } else {
                e[k] = BigInt::one();
                eqs.push(e);
            }
        }
        let g = cone_generators(mobile.len(), &eqs, &ineqs);
        let mut sum = vec![BigInt::zero(); mobile.len()];
        for r in &g.rays {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        let reaches = newly.iter().all(|i| {
            let k = mobile.iter().position(|m| m == i).expect("mobile");
            sum[k].is_negative()
        });
        if !reaches {
            return None;
        }
        let tv: Vec<usize> = target.iter().copied().collect();
        Some(self.project_away(&tv).expect("projection of a polyhedron"))
    }

    /// Image under the map sending the given coordinates to `-inf`.
    pub fn project_away(&self, coords: &[usize]) -> Result<Polyhedron> {
        let mut sed: BTreeSet<usize> = self.sedentarity.iter().copied().collect();
        sed.extend(coords.iter().copied());
        let zero_r = |v: &Vec<Rational>| {
            let mut v = v.clone();
            for &c in coords {
                v[c] = Rational::zero();
            }
            v
        };
        let zero_i = |v: &Vec<BigInt>| {
            let mut v = v.clone();
            for &c in coords {
                v[c] = BigInt::zero();
            }
            v
        };
        let vs: Vec<Vec<Rational>> = self.vertices.iter().map(zero_r).collect();
        let rs: Vec<Vec<BigInt>> = self.rays.iter().map(zero_i).collect();
        let ls: Vec<Vec<BigInt>> = self.lineality.iter().map(zero_i).collect();
        let sed: Vec<usize> = sed.into_iter().collect();
        Polyhedron::from_generators(self.ambient_dim, &sed, &vs, &rs, &ls)
    }

    /// All pieces of the closure in strata whose extra sedentary coordinates lie in `allowed`,
    /// excluding the polyhedron itself.
    pub fn boundary_pieces(&self, allowed: &[usize]) -> Vec<Polyhedron> {
        let extra: Vec<usize> = allowed
            .iter()
            .copied()
            .filter(|i| !self.sedentarity.contains(i))
            .collect();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << extra.len()) {
            let mut target: Vec<usize> = self.sedentarity.clone();
            target.extend(extra.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i));
            target.sort_unstable();
            if let Some(p) = self.stratum_piece(&target) {
                out.push(p);
            }
        }
        out
    }

    /// Cartesian product; coordinates of `other` come after those of `self`.
    pub fn product(&self, other: &Polyhedron) -> Polyhedron {
        let n = self.ambient_dim + other.ambient_dim;
        let mut sed = self.sedentarity.clone();
        sed.extend(other.sedentarity.iter().map(|i| i + self.ambient_dim));
        let mut vs = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                vs.push(v);
            }
        }
        let pad_left = |v: &Vec<BigInt>| {
            let mut w = v.clone();
            w.extend(std::iter::repeat(BigInt::zero()).take(other.ambient_dim));
            w
        };
        let pad_right = |v: &Vec<BigInt>| {
            let mut w = vec![BigInt::zero(); self.ambient_dim];
            w.extend(v.iter().cloned());
            w
        };
        let rs: Vec<Vec<BigInt>> = self.rays.iter().map(pad_left).chain(other.rays.iter().map(pad_right)).collect();
        let ls: Vec<Vec<BigInt>> = self
            .lineality
            .iter()
            .map(pad_left)
            .chain(other.lineality.iter().map(pad_right))
            .collect();
        Polyhedron::from_generators(n, &sed, &vs, &rs, &ls).expect("product of polyhedra")
    }

    /// Image under an affine map `x -> A x + b` that sends sedentary coordinates to sedentary
    /// coordinates. `new_sed` lists the sedentarity of the image.
    pub fn affine_image(
        &self,
        target_dim: usize,
        new_sed: &[usize],
        linear: &dyn Fn(&[Rational]) -> Vec<Rational>,
        translation: &[Rational],
    ) -> Result<Polyhedron> {
        let vs: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| linear(v).iter().zip(translation).map(|(a, b)| a + b).collect())
            .collect();
        let dir = |v: &Vec<BigInt>| primitive_integer(&linear(&ints_to_rats(v)));
        let rs: Vec<Vec<BigInt>> = self.rays.iter().map(dir).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let ls: Vec<Vec<BigInt>> = self.lineality.iter().map(dir).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        Polyhedron::from_generators(target_dim, new_sed, &vs, &rs, &ls)
    }

    fn key(&self) -> (usize, &[usize], &[Vec<Rational>], &[Vec<BigInt>], &[Vec<BigInt>]) {
        (
            self.dim(),
            &self.sedentarity,
            &self.vertices,
            &self.rays,
            &self.lineality,
        )
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.key() == other.key()
    }
}

impl Eq for Polyhedron {}

impl Hash for Polyhedron {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.key().hash(state);
    }
}

impl PartialOrd for Polyhedron {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polyhedron {
    /// Dimension first, then sedentarity and canonical generators.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_dim
            .cmp(&other.ambient_dim)
            .then_with(|| self.key().cmp(&other.key()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{ints, rat, rats};

    fn poly(n: usize, sed: &[usize], vs: &[&[i64]], rs: &[&[i64]]) -> Polyhedron {
        let vs: Vec<Vec<Rational>> = vs.iter().map(|v| rats(v)).collect();
        let rs: Vec<Vec<BigInt>> = rs.iter().map(|r| ints(r)).collect();
        Polyhedron::from_generators(n, sed, &vs, &rs, &[]).unwrap()
    }

    #[test]
    fn ray_from_origin() {
        let p = poly(2, &[], &[&[0, 0]], &[&[1, 1]]);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.equalities().len(), 1);
        assert_eq!(p.facets().len(), 1);
        assert!(p.contains_point(&rats(&[3, 3])));
        assert!(!p.contains_point(&rats(&[-1, -1])));
        assert!(!p.contains_point(&rats(&[1, 0])));
        assert_eq!(p.faces().len(), 2);
    }

    #[test]
    fn redundant_generators_are_removed() {
        let p = poly(2, &[], &[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[1, 2]], &[]);
        let q = poly(2, &[], &[&[0, 0], &[1, 0], &[1, 2], &[0, 1]], &[]);
        assert_eq!(p, q);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.faces().len(), 9);
    }

    #[test]
    fn hrep_round_trip() {
        let p = poly(2, &[], &[&[0, 0], &[2, 0], &[0, 3]], &[]);
        let q = Polyhedron::from_hrep(2, &[], p.equalities(), p.facets()).unwrap().unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn empty_hrep() {
        let f1 = AffineForm { normal: ints(&[1]), constant: BigInt::from(-1) };
        let f2 = AffineForm { normal: ints(&[-1]), constant: BigInt::from(0) };
        assert!(Polyhedron::from_hrep(1, &[], &[], &[f1, f2]).unwrap().is_none());
    }

    #[test]
    fn lineality_is_canonical() {
        let a = Polyhedron::from_generators(2, &[], &[rats(&[0, 0])], &[ints(&[1, 0])], &[ints(&[1, 1])]).unwrap();
        let b = Polyhedron::from_generators(2, &[], &[rats(&[5, 5])], &[ints(&[0, -1])], &[ints(&[-2, -2])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn pieces_at_infinity() {
        let p = poly(2, &[], &[&[0, 0]], &[&[-1, 0]]);
        assert!(p.stratum_piece(&[0]).is_some());
        assert!(p.stratum_piece(&[1]).is_none());
        let piece = p.stratum_piece(&[0]).unwrap();
        assert_eq!(piece.dim(), 0);
        assert_eq!(piece.vertices(), &[rats(&[0, 0])]);
        let q = poly(2, &[], &[&[0, 0]], &[&[-1, 0], &[0, -1]]);
        assert_eq!(q.boundary_pieces(&[0, 1]).len(), 3);
        assert_eq!(q.stratum_piece(&[0]).unwrap().dim(), 1);
        let slanted = poly(2, &[], &[&[0, 0]], &[&[-1, -1]]);
        assert!(slanted.stratum_piece(&[0]).is_none());
        assert!(slanted.stratum_piece(&[0, 1]).is_some());
    }

    #[test]
    fn sedentary_coordinates_must_vanish() {
        let r = Polyhedron::from_generators(2, &[0], &[rats(&[0, 1])], &[ints(&[1, 0])], &[]);
        assert!(matches!(r, Err(Error::InvalidPolyhedron(_))));
        let p = Polyhedron::from_generators(2, &[0], &[rats(&[0, 1])], &[ints(&[0, 1])], &[]).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.mobile_coords(), vec![1]);
    }

    #[test]
    fn product_dimension() {
        let a = poly(1, &[], &[&[0], &[1]], &[]);
        let b = poly(1, &[], &[&[0]], &[&[1]]);
        let p = a.product(&b);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.vertices().len(), 2);
        assert!(p.contains_point(&vec![rat(1), rat(7)]));
    }
}
