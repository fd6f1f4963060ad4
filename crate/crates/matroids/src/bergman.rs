//! Bergman fans with the fine (flag) subdivision.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::polyhedral::{Polyhedron, PolyhedralComplex};

use super::{Matroid, Set};

/// `ρ_F = -(χ_F - χ_F(0)·1)` on coordinates `1..m`.
pub fn flat_ray(m: &Matroid, f: Set) -> Vec<BigInt> {
    let c0 = (f & 1) as i64;
    (1..m.ground_size())
        .map(|i| BigInt::from(-(((f >> i & 1) as i64) - c0)))
        .collect()
}

/// The Bergman fan in `R^m`, `m = |E| - 1`, one weight-one cone per maximal flag.
pub fn bergman_fan(m: &Matroid) -> Result<PolyhedralComplex> {
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(Error::Loop(loops));
    }
    if m.ground_size() == 0 {
        return Err(Error::Validation("the empty matroid has no Bergman fan".into()));
    }
    let r = m.ground_size() - 1;
    let origin = vec![num_rational::BigRational::zero(); r];
    let flags = m.maximal_flags();
    let cones: Vec<(Polyhedron, BigInt)> = if flags.is_empty() || m.rank() <= 1 {
        vec![(Polyhedron::point(&origin), BigInt::one())]
    } else {
        flags
            .iter()
            .map(|flag| {
                let rays: Vec<Vec<BigInt>> = flag.iter().map(|&f| flat_ray(m, f)).collect();
                Ok((
                    Polyhedron::from_generators(r, &[], std::slice::from_ref(&origin), &rays, &[])?,
                    BigInt::one(),
                ))
            })
            .collect::<Result<_>>()?
    };
    PolyhedralComplex::build(r, &[], cones)
}

/// The fans of a matroidal modification along element `e`.
#[derive(Clone, Debug)]
pub struct ModificationTriple {
    pub v: PolyhedralComplex,
    pub w: PolyhedralComplex,
    /// `None` when the contraction has loops, in which case the divisor is empty.
    pub d: Option<PolyhedralComplex>,
    /// 1-based coordinate of `R^m` that is projected away.
    pub coordinate: usize,
}

pub fn matroidal_modification_triple(m: &Matroid, e: usize) -> Result<ModificationTriple> {
    if e == 0 {
        return Err(Error::Validation("element 0 is normalized out and cannot be projected".into()));
    }
    if e >= m.ground_size() {
        return Err(Error::Validation(format!("element {e} outside the ground set")));
    }
    let v = bergman_fan(m)?;
    if m.is_coloop(e) {
        return Err(Error::Coloop(e));
    }
    let (del, con) = m.minors(e)?;
    let w = bergman_fan(&del)?;
    let d = if con.loops().is_empty() { Some(bergman_fan(&con)?) } else { None };
    Ok(ModificationTriple { v, w, d, coordinate: e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropcoh_core::linalg::rational::ints;
    use tropcoh_core::polyhedral::is_balanced;

    #[test]
    fn u23_rays() {
        let m = Matroid::uniform(2, 3).unwrap();
        let rays: Vec<Vec<BigInt>> = m.proper_flats().iter().map(|&f| flat_ray(&m, f)).collect();
        assert_eq!(rays, vec![ints(&[1, 1]), ints(&[-1, 0]), ints(&[0, -1])]);
    }

    #[test]
    fn u34_is_balanced() {
        let f = bergman_fan(&Matroid::uniform(3, 4).unwrap()).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.facets().len(), 12);
        assert_eq!(f.cells_of_dim(1).len(), 10);
        assert!(is_balanced(&f).unwrap());
    }

    #[test]
    fn loops_and_coloops() {
        let with_loop = Matroid::from_bases(3, &[vec![0, 1]]).unwrap();
        assert_eq!(bergman_fan(&with_loop).unwrap_err().kind(), "LoopError");
        let m = Matroid::from_bases(3, &[vec![0, 2], vec![1, 2]]).unwrap();
        assert_eq!(matroidal_modification_triple(&m, 2).unwrap_err().kind(), "ColoopError");
        let t = matroidal_modification_triple(&Matroid::uniform(2, 3).unwrap(), 2).unwrap();
        assert_eq!(t.w.dim(), 1);
        assert_eq!(t.d.unwrap().dim(), 0);
    }
}
