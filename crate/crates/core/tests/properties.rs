use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use tropcoh_core::linalg::lattice::{smith_normal_form, IntMatrix};
use tropcoh_core::linalg::rational::{int_to_rat, rat, Rational};
use tropcoh_core::linalg::RationalMatrix;
use tropcoh_core::polyhedral::Polyhedron;

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

fn to_rational(rows: &[Vec<i64>]) -> RationalMatrix {
    let c = rows[0].len();
    let q: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    RationalMatrix::from_rows(c, &q).unwrap()
}

fn int_to_rational(m: &IntMatrix) -> RationalMatrix {
    let q: Vec<Vec<Rational>> = (0..m.nrows()).map(|i| m.row(i).iter().map(int_to_rat).collect()).collect();
    RationalMatrix::from_rows(m.ncols(), &q).unwrap()
}

fn points() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-4i64..=4, d), 1..7))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in int_matrix()) {
        let m = IntMatrix::from_i64_rows(rows[0].len(), &rows);
        let s = smith_normal_form(&m);
        let umv = s.u.mul(&m).mul(&s.v);
        for i in 0..m.nrows() {
            prop_assert_eq!(umv.row(i), s.d.row(i));
        }
        prop_assert_eq!(int_to_rational(&s.u).determinant().unwrap().abs(), rat(1));
        prop_assert_eq!(int_to_rational(&s.v).determinant().unwrap().abs(), rat(1));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        // rank from elimination over Q agrees with the Smith rank
        prop_assert_eq!(s.rank(), to_rational(&rows).rank());
    }

    #[test]
    fn rank_nullity(rows in int_matrix()) {
        let m = to_rational(&rows);
        let rki = m.rank_kernel_image();
        prop_assert_eq!(rki.rank + rki.kernel.dim(), m.ncols());
        prop_assert_eq!(rki.image.dim(), rki.rank);
        for v in rki.kernel.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn vertex_and_facet_descriptions_agree(pts in points()) {
        let d = pts[0].len();
        let vs: Vec<Vec<Rational>> = pts.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect();
        let p = Polyhedron::from_generators(d, &[], &vs, &[], &[]).unwrap();
        let forms = p.hrep();
        for v in &vs {
            prop_assert!(forms.iter().all(|f| !f.eval(v).is_negative()));
        }
        let q = Polyhedron::from_hrep(d, &[], &[], &forms).unwrap().unwrap();
        let a: BTreeSet<Vec<Rational>> = p.vertices().iter().cloned().collect();
        let b: BTreeSet<Vec<Rational>> = q.vertices().iter().cloned().collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(p.dim(), q.dim());
        // every vertex is one of the input points
        prop_assert!(p.vertices().iter().all(|v| vs.contains(v)));
    }

    #[test]
    fn faces_of_polytopes_are_closed_under_faces(pts in points()) {
        let d = pts[0].len();
        let vs: Vec<Vec<Rational>> = pts.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect();
        let p = Polyhedron::from_generators(d, &[], &vs, &[], &[]).unwrap();
        let faces = p.faces();
        for f in &faces {
            prop_assert!(p.contains(f));
            for g in f.faces() {
                prop_assert!(faces.contains(&g));
            }
        }
    }
}
