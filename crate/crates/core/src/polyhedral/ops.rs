//! Constructions on complexes: products, factors, stars, strata, closures and subdivisions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::PolyhedralComplex;
use super::polyhedron::Polyhedron;
use crate::error::{Error, Result};
use crate::linalg::rational::{int_to_rat, primitive_integer, sub_vec, Rational};
use crate::linalg::{lattice_index, Lattice};

/// `R^s` as a single cell.
pub fn real_space(s: usize) -> PolyhedralComplex {
    PolyhedralComplex::build(s, &[], vec![(Polyhedron::whole_space(s, &[]), BigInt::one())])
        .expect("affine space is a complex")
}

/// `T^s`, the closure of `R^s` with all coordinates tropical.
pub fn tropical_space(s: usize) -> PolyhedralComplex {
    let trop: Vec<usize> = (0..s).collect();
    PolyhedralComplex::build(s, &trop, vec![(Polyhedron::whole_space(s, &[]), BigInt::one())])
        .expect("tropical affine space is a complex")
}

/// Product complex with the coordinates of `b` after those of `a`.
pub fn product(a: &PolyhedralComplex, b: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    let mut cells = Vec::new();
    for (p, w) in a.weighted_maximal_cells() {
        for (q, v) in b.weighted_maximal_cells() {
            cells.push((p.product(&q), &w * &v));
        }
    }
    let mut trop: Vec<usize> = a.tropical_coords().to_vec();
    trop.extend(b.tropical_coords().iter().map(|i| i + a.ambient_dim()));
    PolyhedralComplex::build(a.ambient_dim() + b.ambient_dim(), &trop, cells)
}

/// The same cells closed up along additional tropical coordinates.
pub fn closure(c: &PolyhedralComplex, coords: &[usize]) -> Result<PolyhedralComplex> {
    let mut trop: BTreeSet<usize> = c.tropical_coords().iter().copied().collect();
    trop.extend(coords.iter().copied());
    let trop: Vec<usize> = trop.into_iter().collect();
    PolyhedralComplex::build(c.ambient_dim(), &trop, c.weighted_maximal_cells())
}

/// The fan of cones `cone(tau - x)` over same-sedentarity cofaces `tau` of a cell, with `x` in
/// its relative interior. The fan lives in the same ambient space with no tropical coordinates.
pub fn star(c: &PolyhedralComplex, sigma: usize) -> Result<PolyhedralComplex> {
    let s = c.cell(sigma);
    let x = s.polyhedron.relative_interior_point();
    let sed = s.sedentarity().to_vec();
    let lin_sigma: Vec<Vec<BigInt>> = s.polyhedron.lattice().basis().to_vec();
    let r = c.ambient_dim();
    let origin = vec![Rational::zero(); r];
    let mut cells = Vec::new();
    for t in c.same_sedentarity_cofaces(sigma) {
        let Some(w) = c.weight(t) else { continue };
        let tp = &c.cell(t).polyhedron;
        let mut rays: Vec<Vec<BigInt>> = tp.rays().to_vec();
        for v in tp.vertices() {
            let d = sub_vec(v, &x);
            if d.iter().any(|e| !e.is_zero()) {
                rays.push(primitive_integer(&d));
            }
        }
        let mut lin = tp.lineality().to_vec();
        lin.extend(lin_sigma.iter().cloned());
        cells.push((Polyhedron::from_generators(r, &sed, &[origin.clone()], &rays, &lin)?, w.clone()));
    }
    if cells.is_empty() {
        return Err(Error::Validation("star of a cell without weighted cofaces".into()));
    }
    PolyhedralComplex::build(r, &[], cells)
}

fn drop_coords_rational(v: &[Rational], keep: &[usize]) -> Vec<Rational> {
    keep.iter().map(|&i| v[i].clone()).collect()
}

fn drop_coords_int(v: &[BigInt], keep: &[usize]) -> Vec<BigInt> {
    keep.iter().map(|&i| v[i].clone()).collect()
}

/// The open stratum with sedentarity exactly `sed`, as a complex in `R^{r - |sed|}`.
///
/// Maximal cells that were not weighted in `c` get the sum of `m_sigma` times the lattice index
/// of the projection over facets `sigma` whose closure meets the stratum in that cell with the
/// expected dimension drop; cells with no such facet get weight one.
pub fn restrict_to_stratum(c: &PolyhedralComplex, sed: &[usize]) -> Result<PolyhedralComplex> {
    let sed: Vec<usize> = sed.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let keep: Vec<usize> = (0..c.ambient_dim()).filter(|i| !sed.contains(i)).collect();
    let ids: Vec<usize> = (0..c.len()).filter(|&i| c.cell(i).sedentarity() == sed.as_slice()).collect();
    let maximal: Vec<usize> = ids
        .iter()
        .copied()
        .filter(|&i| !c.above(i).iter().any(|&s| c.cell(s).sedentarity() == sed.as_slice()))
        .collect();
    let mut cells = Vec::new();
    for &m in &maximal {
        let p = &c.cell(m).polyhedron;
        let weight = match c.weight(m) {
            Some(w) => w.clone(),
            None => induced_weight(c, m)?,
        };
        let vs: Vec<Vec<Rational>> = p.vertices().iter().map(|v| drop_coords_rational(v, &keep)).collect();
        let rs: Vec<Vec<BigInt>> = p.rays().iter().map(|v| drop_coords_int(v, &keep)).collect();
        let ls: Vec<Vec<BigInt>> = p.lineality().iter().map(|v| drop_coords_int(v, &keep)).collect();
        cells.push((Polyhedron::from_generators(keep.len(), &[], &vs, &rs, &ls)?, weight));
    }
    PolyhedralComplex::build(keep.len(), &[], cells)
}

fn induced_weight(c: &PolyhedralComplex, tau: usize) -> Result<BigInt> {
    let t = c.cell(tau);
    let mut total = BigInt::zero();
    for &s in c.above(tau) {
        let Some(w) = c.weight(s) else { continue };
        let sc = c.cell(s);
        let jump = t.sedentarity().len() - sc.sedentarity().len();
        if sc.dim() != t.dim() + jump {
            continue;
        }
        let killed: Vec<usize> = t.sedentarity().to_vec();
        let projected: Vec<Vec<BigInt>> = sc
            .polyhedron
            .lattice()
            .basis()
            .iter()
            .map(|b| {
                let mut b = b.clone();
                for &k in &killed {
                    b[k] = BigInt::zero();
                }
                b
            })
            .collect();
        let image = Lattice::from_generators(c.ambient_dim(), &projected);
        let idx = lattice_index(t.polyhedron.lattice(), &image)?;
        total += w * idx;
    }
    Ok(if total.is_zero() { BigInt::one() } else { total })
}

/// Splits every maximal cell that is a ray `v + cone(r)` into the segment `[v, v + r]` and the
/// ray `v + r + cone(r)`, with `r` primitive.
pub fn subdivide_rays(c: &PolyhedralComplex) -> Result<PolyhedralComplex> {
    let mut cells = Vec::new();
    for (p, w) in c.weighted_maximal_cells() {
        if p.dim() == 1 && p.vertices().len() == 1 && p.rays().len() == 1 && p.lineality().is_empty() {
            let v = &p.vertices()[0];
            let r = &p.rays()[0];
            let v2: Vec<Rational> = v.iter().zip(r).map(|(a, b)| a + int_to_rat(b)).collect();
            let seg = Polyhedron::from_generators(c.ambient_dim(), p.sedentarity(), &[v.clone(), v2.clone()], &[], &[])?;
            let ray = Polyhedron::from_generators(c.ambient_dim(), p.sedentarity(), &[v2], &[r.clone()], &[])?;
            cells.push((seg, w.clone()));
            cells.push((ray, w));
        } else {
            cells.push((p, w));
        }
    }
    PolyhedralComplex::build(c.ambient_dim(), c.tropical_coords(), cells)
}

/// Multiplies every weight by `k`.
pub fn scale_weights(c: &PolyhedralComplex, k: &BigInt) -> Result<PolyhedralComplex> {
    let cells = c.weighted_maximal_cells().into_iter().map(|(p, w)| (p, w * k)).collect();
    PolyhedralComplex::build(c.ambient_dim(), c.tropical_coords(), cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{ints, rats};
    use crate::polyhedral::balancing::is_balanced;

    fn ray(n: usize, r: &[i64]) -> Polyhedron {
        Polyhedron::from_generators(n, &[], &[rats(&vec![0; n])], &[ints(r)], &[]).unwrap()
    }

    fn line() -> PolyhedralComplex {
        let one = BigInt::one();
        PolyhedralComplex::build(
            2,
            &[],
            vec![(ray(2, &[-1, 0]), one.clone()), (ray(2, &[0, -1]), one.clone()), (ray(2, &[1, 1]), one)],
        )
        .unwrap()
    }

    #[test]
    fn tropical_line_space() {
        let t = tropical_space(1);
        assert_eq!(t.len(), 2);
        let p = product(&PolyhedralComplex::build(0, &[], vec![(Polyhedron::point(&[]), BigInt::one())]).unwrap(), &t).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn line_times_factors() {
        let l = line();
        let lr = product(&l, &real_space(1)).unwrap();
        assert_eq!(lr.dim(), 2);
        assert_eq!(lr.maximal_cells().len(), 3);
        assert!(is_balanced(&lr).unwrap());
        let lt = product(&l, &tropical_space(1)).unwrap();
        assert_eq!(lt.len(), 8);
        let s = restrict_to_stratum(&lt, &[2]).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.ambient_dim(), 2);
    }

    #[test]
    fn stars_of_the_line() {
        let l = line();
        let s = star(&l, 0).unwrap();
        assert_eq!(s.len(), 4);
        let r = l.cells().iter().position(|c| c.polyhedron.rays() == [ints(&[-1, 0])]).unwrap();
        let s = star(&l, r).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.cell(0).polyhedron.lineality(), &[ints(&[1, 0])]);
    }

    #[test]
    fn strata_of_the_tropical_line() {
        let t = tropical_space(1);
        let s = restrict_to_stratum(&t, &[0]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.ambient_dim(), 0);
    }

    #[test]
    fn subdivided_line_is_balanced() {
        let s = subdivide_rays(&line()).unwrap();
        assert_eq!(s.len(), 10);
        assert!(is_balanced(&s).unwrap());
    }
}
