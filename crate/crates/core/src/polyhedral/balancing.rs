//! Primitive normals, incidence signs and the balancing condition.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::complex::PolyhedralComplex;
use crate::error::{Error, Result};
use crate::linalg::rational::{ints_to_rats, sub_vec, Rational};
use crate::linalg::{lattice_quotient_primitive, Lattice, RationalMatrix, Subspace};

/// Primitive integer vector of `Z(sigma)` pointing from the facet `tau` into `sigma`.
///
/// For a face at infinity the normal points from the stratum of `tau` back into the stratum of
/// `sigma`, i.e. it is positive on the newly sedentary coordinates.
pub fn primitive_normal(c: &PolyhedralComplex, tau: usize, sigma: usize) -> Result<Vec<BigInt>> {
    let (t, s) = (c.cell(tau), c.cell(sigma));
    if !c.is_face(tau, sigma) || tau == sigma {
        return Err(Error::Codimension(format!(
            "{} is not a proper face of {}",
            c.describe_cell(tau),
            c.describe_cell(sigma)
        )));
    }
    if t.dim() + 1 != s.dim() {
        return Err(Error::Codimension(format!(
            "dimensions {} and {} do not differ by one",
            t.dim(),
            s.dim()
        )));
    }
    if t.sedentarity() == s.sedentarity() {
        let witness = sub_vec(
            &s.polyhedron.relative_interior_point(),
            &t.polyhedron.relative_interior_point(),
        );
        return lattice_quotient_primitive(s.polyhedron.lattice(), t.polyhedron.lattice(), &witness);
    }
    let newly: Vec<usize> = t
        .sedentarity()
        .iter()
        .copied()
        .filter(|i| !s.sedentarity().contains(i))
        .collect();
    let u = infinity_direction(s.polyhedron.tangent(), &newly)?;
    Ok(u.into_iter().map(|x| -x).collect())
}

/// Primitive generator of `L ∩ span{e_j : j in coords}`, oriented to be negative there.
fn infinity_direction(tangent: &Subspace, coords: &[usize]) -> Result<Vec<BigInt>> {
    let n = tangent.ambient_dim();
    let mut eqs: Vec<Vec<Rational>> = tangent.orthogonal_complement().basis().to_vec();
    for i in (0..n).filter(|i| !coords.contains(i)) {
        let mut e = vec![Rational::zero(); n];
        e[i] = num_traits::One::one();
        eqs.push(e);
    }
    let k = RationalMatrix::from_rows(n, &eqs)?.kernel();
    if k.dim() != 1 {
        return Err(Error::Codimension(format!(
            "the direction to infinity has dimension {}",
            k.dim()
        )));
    }
    let lat = Lattice::integer_points(&k);
    let mut u = lat.basis()[0].clone();
    if coords.iter().any(|&j| u[j].is_positive()) {
        u = u.into_iter().map(|x| -x).collect();
    }
    Ok(u)
}

/// Sign of the cellular incidence between `tau` and a coface `sigma` of one dimension more.
pub fn incidence_sign(c: &PolyhedralComplex, tau: usize, sigma: usize) -> Result<i32> {
    let nu = primitive_normal(c, tau, sigma)?;
    let (t, s) = (c.cell(tau), c.cell(sigma));
    let mut frame: Vec<Vec<Rational>> = vec![ints_to_rats(&nu)];
    if t.sedentarity() == s.sedentarity() {
        frame.extend(t.orientation.iter().map(|v| ints_to_rats(v)));
    } else {
        let killed = t.sedentarity();
        let basis: Vec<Vec<Rational>> = s.orientation.iter().map(|v| ints_to_rats(v)).collect();
        let projected: Vec<Vec<Rational>> = basis
            .iter()
            .map(|b| {
                let mut b = b.clone();
                for &k in killed {
                    b[k] = Rational::zero();
                }
                b
            })
            .collect();
        let pm = RationalMatrix::from_rows(c.ambient_dim(), &projected)?;
        for o in &t.orientation {
            let coeffs = pm
                .solve_left(&ints_to_rats(o))
                .ok_or_else(|| Error::InternalConsistency("face orientation does not lift".into()))?;
            let mut lift = vec![Rational::zero(); c.ambient_dim()];
            for (ci, b) in coeffs.iter().zip(&basis) {
                for (l, bj) in lift.iter_mut().zip(b) {
                    *l += ci * bj;
                }
            }
            frame.push(lift);
        }
    }
    let basis: Vec<Vec<Rational>> = s.orientation.iter().map(|v| ints_to_rats(v)).collect();
    let bm = RationalMatrix::from_rows(c.ambient_dim(), &basis)?;
    let mut coords = Vec::with_capacity(frame.len());
    for f in &frame {
        coords.push(
            bm.solve_left(f)
                .ok_or_else(|| Error::InternalConsistency("frame vector outside the cell".into()))?,
        );
    }
    let det = RationalMatrix::from_rows(basis.len(), &coords)?.determinant()?;
    if det.is_zero() {
        return Err(Error::InternalConsistency("degenerate incidence frame".into()));
    }
    Ok(if det.is_positive() { 1 } else { -1 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancingFailure {
    pub cell: usize,
    /// Weighted sum of primitive normals, reduced modulo the lattice of the face.
    pub defect: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancingReport {
    pub balanced: bool,
    pub failures: Vec<BalancingFailure>,
}

/// Weighted sum of primitive normals of the same-sedentarity facets around a codimension-one cell.
pub fn balancing_sum(c: &PolyhedralComplex, tau: usize) -> Result<Vec<BigInt>> {
    let mut sum = vec![BigInt::zero(); c.ambient_dim()];
    let t = c.cell(tau);
    for &s in &t.cofaces {
        let cell = c.cell(s);
        if cell.sedentarity() != t.sedentarity() || cell.dim() != t.dim() + 1 {
            continue;
        }
        let Some(w) = cell.weight.as_ref() else { continue };
        let nu = primitive_normal(c, tau, s)?;
        for (x, n) in sum.iter_mut().zip(&nu) {
            *x += w * n;
        }
    }
    Ok(sum)
}

pub fn balancing_report(c: &PolyhedralComplex) -> Result<BalancingReport> {
    c.require_pure()?;
    let n = c.dim();
    let mut failures = Vec::new();
    if n == 0 {
        return Ok(BalancingReport { balanced: true, failures });
    }
    for tau in c.cells_of_dim(n - 1) {
        let sum = balancing_sum(c, tau)?;
        let t = &c.cell(tau).polyhedron;
        if !t.tangent().contains(&ints_to_rats(&sum)) {
            failures.push(BalancingFailure {
                cell: tau,
                defect: t.lattice().reduce(&sum),
            });
        }
    }
    Ok(BalancingReport {
        balanced: failures.is_empty(),
        failures,
    })
}

pub fn is_balanced(c: &PolyhedralComplex) -> Result<bool> {
    Ok(balancing_report(c)?.balanced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{ints, rats};
    use crate::polyhedral::Polyhedron;

    fn ray(n: usize, r: &[i64]) -> Polyhedron {
        Polyhedron::from_generators(n, &[], &[rats(&vec![0; n])], &[ints(r)], &[]).unwrap()
    }

    fn line(weights: [i64; 3]) -> PolyhedralComplex {
        PolyhedralComplex::build(
            2,
            &[],
            vec![
                (ray(2, &[-1, 0]), BigInt::from(weights[0])),
                (ray(2, &[0, -1]), BigInt::from(weights[1])),
                (ray(2, &[1, 1]), BigInt::from(weights[2])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn tropical_line_is_balanced() {
        assert!(is_balanced(&line([1, 1, 1])).unwrap());
    }

    #[test]
    fn mutant_line_reports_defect() {
        let r = balancing_report(&line([1, 1, 2])).unwrap();
        assert!(!r.balanced);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].defect, ints(&[1, 1]));
    }

    #[test]
    fn normals_point_into_cells() {
        let c = line([1, 1, 1]);
        for &s in c.cell(0).cofaces.iter() {
            let nu = primitive_normal(&c, 0, s).unwrap();
            assert_eq!(&nu, &c.cell(s).polyhedron.rays()[0]);
            assert_eq!(incidence_sign(&c, 0, s).unwrap(), 1);
        }
    }

    #[test]
    fn signs_at_infinity() {
        let c = PolyhedralComplex::build(1, &[0], vec![(ray(1, &[-1]), BigInt::from(1))]).unwrap();
        let edge = c.cells().iter().position(|x| x.dim() == 1).unwrap();
        let fin = c.cells().iter().position(|x| x.dim() == 0 && x.sedentarity().is_empty()).unwrap();
        let inf = c.cells().iter().position(|x| x.sedentarity() == [0]).unwrap();
        assert_eq!(primitive_normal(&c, inf, edge).unwrap(), ints(&[1]));
        assert_eq!(incidence_sign(&c, fin, edge).unwrap(), 1);
        assert_eq!(incidence_sign(&c, inf, edge).unwrap(), -1);
    }
}
