//! Double description over the integers for homogeneous cones.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::rational::{dot_int, primitive};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn contains_all(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    let v: Vec<BigInt> = x.iter().zip(y).map(|(xi, yi)| a * xi - b * yi).collect();
    primitive(&v)
}

/// Generators of `{x : E x = 0, A x >= 0}` in `dim` variables. Rays are extreme modulo lineality.
pub fn cone_generators(
    dim: usize,
    equalities: &[Vec<BigInt>],
    inequalities: &[Vec<BigInt>],
) -> ConeGenerators {
    let mut lin: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    for a in equalities {
        let Some(k) = lin.iter().position(|l| !dot_int(a, l).is_zero()) else {
            continue;
        };
        let l0 = lin.swap_remove(k);
        let al0 = dot_int(a, &l0);
        for l in lin.iter_mut() {
            let al = dot_int(a, l);
            if !al.is_zero() {
                *l = combine(&al0, l, &al, &l0);
            }
        }
    }
    let space = lin.len();
    let m = inequalities.len();
    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::new();
    for (k, a) in inequalities.iter().enumerate() {
        if let Some(pos) = lin.iter().position(|l| !dot_int(a, l).is_zero()) {
            let mut l0 = lin.swap_remove(pos);
            let mut al0 = dot_int(a, &l0);
            if al0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                al0 = -al0;
            }
            for l in lin.iter_mut() {
                let al = dot_int(a, l);
                if !al.is_zero() {
                    *l = combine(&al0, l, &al, &l0);
                }
            }
            for (r, z) in rays.iter_mut() {
                let ar = dot_int(a, r);
                if !ar.is_zero() {
                    *r = combine(&al0, r, &ar, &l0);
                }
                z.set(k);
            }
            let mut z = Bits::new(m);
            for j in 0..k {
                z.set(j);
            }
            rays.push((l0, z));
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot_int(a, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for ((_, z), v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    z.set(k);
                }
            }
            continue;
        }
        let free = space - lin.len();
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for ((r, z), v) in rays.iter().zip(&vals) {
            if v.is_positive() {
                next.push((r.clone(), z.clone()));
            } else if v.is_zero() {
                let mut z = z.clone();
                z.set(k);
                next.push((r.clone(), z));
            }
        }
        for (i, (p, zp)) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, (n, zn)) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common = zp.and(zn);
                if common.count() + 2 < free {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(t, (_, zt))| t != i && t != j && zt.contains_all(&common));
                if blocked {
                    continue;
                }
                let new = combine(&vals[i], n, &vals[j], p);
                let mut z = common;
                z.set(k);
                next.push((new, z));
            }
        }
        rays = next;
    }
    ConeGenerators {
        lineality: lin,
        rays: rays.into_iter().map(|(r, _)| r).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::ints;

    fn sorted(mut v: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
        v.sort();
        v
    }

    #[test]
    fn positive_orthant() {
        let g = cone_generators(2, &[], &[ints(&[1, 0]), ints(&[0, 1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), vec![ints(&[0, 1]), ints(&[1, 0])]);
    }

    #[test]
    fn equalities_shrink_the_pointed_part() {
        // z = 0, -x >= 0, -y >= 0, y - x >= 0, t >= 0: rays (0,-1,-1,0), (0,-1,0,0), (1,0,0,0)
        let eqs = vec![ints(&[0, 0, 0, 1]), ints(&[0, 0, 0, 1])];
        let ineqs = vec![ints(&[0, -1, 0, 0]), ints(&[0, 0, -1, 0]), ints(&[0, -1, 1, 0]), ints(&[1, 0, 0, 0])];
        let g = cone_generators(4, &eqs, &ineqs);
        assert!(g.lineality.is_empty());
        assert_eq!(
            sorted(g.rays),
            vec![ints(&[0, -1, -1, 0]), ints(&[0, -1, 0, 0]), ints(&[1, 0, 0, 0])]
        );
    }

    #[test]
    fn cone_over_square() {
        // t >= 0, t - x >= 0, t + x >= 0, t - y >= 0, t + y >= 0
        let ineqs = vec![
            ints(&[1, -1, 0]),
            ints(&[1, 1, 0]),
            ints(&[1, 0, -1]),
            ints(&[1, 0, 1]),
        ];
        let g = cone_generators(3, &[], &ineqs);
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert_eq!(r[0], BigInt::from(1));
            assert_eq!(r[1].abs(), BigInt::from(1));
            assert_eq!(r[2].abs(), BigInt::from(1));
        }
    }

    #[test]
    fn half_plane_keeps_lineality() {
        let g = cone_generators(2, &[], &[ints(&[1, 0])]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
        assert_eq!(g.lineality[0][0], BigInt::zero());
    }

    #[test]
    fn equalities_cut_dimension() {
        let g = cone_generators(3, &[ints(&[1, 1, 1])], &[ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 0);
        let g = cone_generators(3, &[ints(&[1, -1, 0])], &[ints(&[1, 0, 0]), ints(&[0, 0, 1])]);
        assert_eq!(g.rays.len(), 2);
    }
}
