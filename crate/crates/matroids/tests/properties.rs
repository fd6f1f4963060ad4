use num_bigint::BigInt;
use proptest::prelude::*;

use tropcoh_core::polyhedral::is_balanced;
use tropcoh_matroids::io::{matroid_from_json, matroid_to_json};
use tropcoh_matroids::poly::characteristic_polynomial_by_subsets;
use tropcoh_matroids::{bergman_fan, characteristic_polynomial, enumerate_matroids, os_dims, Matroid};

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    while v.len() > 1 && v.last() == Some(&BigInt::from(0)) {
        v.pop();
    }
    v
}

fn matroid_and_element() -> impl Strategy<Value = (Matroid, usize)> {
    let all = enumerate_matroids(4);
    (0..all.len(), 0usize..4).prop_map(move |(i, e)| (all[i].clone(), e))
}

fn sorted_bases(m: &Matroid) -> Vec<Vec<usize>> {
    let mut b = m.bases_as_lists();
    b.sort();
    b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn characteristic_polynomial_recursion((m, e) in matroid_and_element()) {
        let chi = characteristic_polynomial(&m);
        prop_assert_eq!(&chi, &characteristic_polynomial_by_subsets(&m));
        if m.is_loop(e) {
            prop_assert!(chi.iter().all(|c| *c == BigInt::from(0)));
        } else if !m.is_coloop(e) {
            let (d, c) = m.minors(e).unwrap();
            prop_assert_eq!(chi, sub(&characteristic_polynomial(&d), &characteristic_polynomial(&c)));
        } else {
            // a coloop splits off a factor λ - 1
            let c = m.contraction(e).unwrap();
            let cc = characteristic_polynomial(&c);
            let mut shifted = vec![BigInt::from(0)];
            shifted.extend(cc.iter().cloned());
            prop_assert_eq!(chi, sub(&shifted, &cc));
        }
    }

    #[test]
    fn deletion_and_contraction_commute((m, e) in matroid_and_element(), f in 0usize..4) {
        prop_assume!(e != f);
        let shift = |x: usize, gone: usize| if x > gone { x - 1 } else { x };
        let a = m.deletion(e).unwrap().contraction(shift(f, e)).unwrap();
        let b = m.contraction(f).unwrap().deletion(shift(e, f)).unwrap();
        prop_assert_eq!(sorted_bases(&a), sorted_bases(&b));
    }

    #[test]
    fn flats_are_closed((m, _e) in matroid_and_element()) {
        let flats = m.flats();
        for &f in &flats {
            prop_assert_eq!(m.closure(f), f);
        }
        prop_assert_eq!(flats.iter().filter(|&&f| m.rank_of(f) == 0).count(), 1);
        prop_assert!(flats.contains(&m.ground()));
    }

    #[test]
    fn loopless_fans_are_balanced_of_the_right_dimension((m, _e) in matroid_and_element()) {
        prop_assume!(m.loops().is_empty());
        let f = bergman_fan(&m).unwrap();
        prop_assert!(is_balanced(&f).unwrap());
        prop_assert_eq!(f.dim(), m.rank().saturating_sub(1));
        let os = os_dims(&m).unwrap();
        prop_assert_eq!(os.len(), m.rank());
        prop_assert_eq!(os[0], 1);
    }

    #[test]
    fn files_round_trip((m, _e) in matroid_and_element()) {
        let back = matroid_from_json(&matroid_to_json(&m)).unwrap();
        prop_assert_eq!(sorted_bases(&back), sorted_bases(&m));
        prop_assert_eq!(back.ground(), m.ground());
    }
}
