//! Exhaustive enumeration of small matroids.

use std::collections::BTreeSet;

use super::{Matroid, Set};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// All matroids on `{0, .., n-1}`, by brute force over families of equal-size subsets.
pub fn enumerate_matroids(n: usize) -> Vec<Matroid> {
    assert!(n <= 6, "brute force enumeration is limited to six elements");
    let mut out = Vec::new();
    for r in 0..=n {
        let subsets: Vec<Set> = (0..(1u64 << n)).filter(|s| s.count_ones() as usize == r).collect();
        let k = subsets.len();
        for family in 1..(1u64 << k) {
            let sets: Vec<Set> = (0..k).filter(|i| family >> i & 1 == 1).map(|i| subsets[i]).collect();
            if let Ok(m) = Matroid::from_sets(n, sets) {
                out.push(m);
            }
        }
    }
    out
}

/// The lexicographically smallest sorted basis list over all relabellings.
pub fn canonical_form(m: &Matroid, perms: &[Vec<usize>]) -> Vec<Set> {
    perms
        .iter()
        .map(|p| m.relabel(p).bases().to_vec())
        .min()
        .expect("at least the identity permutation")
}

/// One representative per isomorphism class of loopless matroids on `n` elements.
pub fn loopless_matroids_up_to_iso(n: usize) -> Vec<Matroid> {
    let perms = permutations(n);
    let mut seen: BTreeSet<Vec<Set>> = BTreeSet::new();
    let mut out = Vec::new();
    for m in enumerate_matroids(n) {
        if !m.loops().is_empty() {
            continue;
        }
        if seen.insert(canonical_form(&m, &perms)) {
            out.push(m);
        }
    }
    out
}
