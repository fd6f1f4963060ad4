//! Matroids on small ground sets, stored by their bases as bitmasks.

pub mod bergman;
pub mod enumerate;
pub mod io;
pub mod poly;

use std::collections::{BTreeSet, HashSet, VecDeque};

use tropcoh_core::error::{Error, Result};

pub use bergman::{bergman_fan, matroidal_modification_triple, ModificationTriple};
pub use enumerate::{enumerate_matroids, loopless_matroids_up_to_iso};
pub use poly::{characteristic_polynomial, characteristic_polynomial_by_subsets, os_dims, reduced_characteristic_polynomial};

pub type Set = u64;

pub const MAX_GROUND: usize = 24;

pub fn bits(s: Set) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}

pub fn to_set(elems: &[usize]) -> Set {
    elems.iter().fold(0, |acc, &e| acc | (1 << e))
}

pub fn elements(s: Set) -> Vec<usize> {
    bits(s).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    ground_size: usize,
    rank: usize,
    /// Sorted, distinct.
    bases: Vec<Set>,
}

impl Matroid {
    /// Validates the basis exchange axiom.
    pub fn from_bases(ground_size: usize, bases: &[Vec<usize>]) -> Result<Self> {
        let sets: Vec<Set> = bases
            .iter()
            .map(|b| {
                if let Some(&e) = b.iter().find(|&&e| e >= ground_size) {
                    return Err(Error::MatroidAxiom(format!("element {e} outside the ground set")));
                }
                let s = to_set(b);
                if s.count_ones() as usize != b.len() {
                    return Err(Error::MatroidAxiom("repeated element in a basis".into()));
                }
                Ok(s)
            })
            .collect::<Result<_>>()?;
        Self::from_sets(ground_size, sets)
    }

    pub fn from_sets(ground_size: usize, sets: Vec<Set>) -> Result<Self> {
        if ground_size > MAX_GROUND {
            return Err(Error::MatroidAxiom(format!(
                "ground sets larger than {MAX_GROUND} are not supported"
            )));
        }
        let mut bases: Vec<Set> = sets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if bases.is_empty() {
            return Err(Error::MatroidAxiom("a matroid needs at least one basis".into()));
        }
        let rank = bases[0].count_ones() as usize;
        if bases.iter().any(|b| b.count_ones() as usize != rank) {
            return Err(Error::MatroidAxiom("bases have different sizes".into()));
        }
        if let Some(b) = bases.iter().find(|&&b| b >> ground_size != 0) {
            return Err(Error::MatroidAxiom(format!("basis {:?} leaves the ground set", elements(*b))));
        }
        bases.sort_unstable();
        let m = Matroid { ground_size, rank, bases };
        m.check_exchange()?;
        Ok(m)
    }

    fn check_exchange(&self) -> Result<()> {
        let set: HashSet<Set> = self.bases.iter().copied().collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in bits(b1 & !b2) {
                    let ok = bits(b2 & !b1).any(|y| set.contains(&((b1 & !(1 << x)) | (1 << y))));
                    if !ok {
                        return Err(Error::MatroidAxiom(format!(
                            "exchange fails for bases {:?} and {:?} at element {x}",
                            elements(b1),
                            elements(b2)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        if rank > n {
            return Err(Error::MatroidAxiom(format!("uniform rank {rank} exceeds ground size {n}")));
        }
        let sets = (0..(1u64 << n)).filter(|s| s.count_ones() as usize == rank).collect();
        Self::from_sets(n, sets)
    }

    /// Cycle matroid of a multigraph; bases are spanning forests.
    pub fn from_graph(edges: &[(usize, usize)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::MatroidAxiom("graph without edges".into()));
        }
        let nv = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
        let forest_rank = {
            let mut uf: Vec<usize> = (0..nv).collect();
            let mut r = 0;
            for &(u, v) in edges {
                let (a, b) = (find(&mut uf, u), find(&mut uf, v));
                if a != b {
                    uf[a] = b;
                    r += 1;
                }
            }
            r
        };
        let m = edges.len();
        if m > MAX_GROUND {
            return Err(Error::MatroidAxiom(format!("graphs with more than {MAX_GROUND} edges are not supported")));
        }
        let mut sets = Vec::new();
        for s in 0..(1u64 << m) {
            if s.count_ones() as usize != forest_rank {
                continue;
            }
            let mut uf: Vec<usize> = (0..nv).collect();
            let acyclic = bits(s).all(|e| {
                let (u, v) = edges[e];
                let (a, b) = (find(&mut uf, u), find(&mut uf, v));
                if a == b {
                    false
                } else {
                    uf[a] = b;
                    true
                }
            });
            if acyclic {
                sets.push(s);
            }
        }
        Self::from_sets(m, sets)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Set] {
        &self.bases
    }

    pub fn bases_as_lists(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| elements(b)).collect()
    }

    pub fn ground(&self) -> Set {
        if self.ground_size == 64 {
            u64::MAX
        } else {
            (1u64 << self.ground_size) - 1
        }
    }

    pub fn rank_of(&self, s: Set) -> usize {
        self.bases.iter().map(|b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn is_independent(&self, s: Set) -> bool {
        self.rank_of(s) == s.count_ones() as usize
    }

    pub fn closure(&self, s: Set) -> Set {
        let r = self.rank_of(s);
        (0..self.ground_size)
            .filter(|&e| s >> e & 1 == 1 || self.rank_of(s | (1 << e)) == r)
            .fold(0, |acc, e| acc | (1 << e))
    }

    pub fn loops(&self) -> Vec<usize> {
        let union = self.bases.iter().fold(0, |acc, b| acc | b);
        (0..self.ground_size).filter(|&e| union >> e & 1 == 0).collect()
    }

    pub fn coloops(&self) -> Vec<usize> {
        let inter = self.bases.iter().fold(self.ground(), |acc, b| acc & b);
        elements(inter)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.bases.iter().all(|b| b >> e & 1 == 0)
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.bases.iter().all(|b| b >> e & 1 == 1)
    }

    /// All flats ordered by rank and then by bitmask.
    pub fn flats(&self) -> Vec<Set> {
        let bottom = self.closure(0);
        let mut seen: HashSet<Set> = HashSet::from([bottom]);
        let mut queue = VecDeque::from([bottom]);
        while let Some(f) = queue.pop_front() {
            for e in 0..self.ground_size {
                if f >> e & 1 == 0 {
                    let g = self.closure(f | (1 << e));
                    if seen.insert(g) {
                        queue.push_back(g);
                    }
                }
            }
        }
        let mut out: Vec<Set> = seen.into_iter().collect();
        out.sort_by_key(|&f| (self.rank_of(f), f));
        out
    }

    /// Flats other than the closure of the empty set and the ground set.
    pub fn proper_flats(&self) -> Vec<Set> {
        let bottom = self.closure(0);
        let top = self.ground();
        self.flats().into_iter().filter(|&f| f != bottom && f != top).collect()
    }

    /// All chains of proper flats, strictly increasing, shortest first.
    pub fn flags(&self) -> Vec<Vec<Set>> {
        let flats = self.proper_flats();
        let mut out: Vec<Vec<Set>> = Vec::new();
        let mut frontier: Vec<Vec<Set>> = flats.iter().map(|&f| vec![f]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for chain in &frontier {
                let last = *chain.last().expect("nonempty");
                for &g in &flats {
                    if g != last && g & last == last {
                        let mut c = chain.clone();
                        c.push(g);
                        next.push(c);
                    }
                }
            }
            out.append(&mut frontier);
            frontier = next;
        }
        out
    }

    /// Chains of proper flats of length `rank - 1`.
    pub fn maximal_flags(&self) -> Vec<Vec<Set>> {
        let len = self.rank.saturating_sub(1);
        self.flags().into_iter().filter(|c| c.len() == len).collect()
    }

    /// `M \ e`, relabelling the remaining elements in order.
    pub fn deletion(&self, e: usize) -> Result<Matroid> {
        self.check_element(e)?;
        let sets: Vec<Set> = if self.is_coloop(e) {
            self.bases.iter().map(|&b| squeeze(b & !(1 << e), e)).collect()
        } else {
            self.bases.iter().filter(|&&b| b >> e & 1 == 0).map(|&b| squeeze(b, e)).collect()
        };
        Self::from_sets(self.ground_size - 1, sets)
    }

    /// `M / e`, relabelling the remaining elements in order.
    pub fn contraction(&self, e: usize) -> Result<Matroid> {
        self.check_element(e)?;
        let sets: Vec<Set> = if self.is_loop(e) {
            self.bases.iter().map(|&b| squeeze(b, e)).collect()
        } else {
            self.bases
                .iter()
                .filter(|&&b| b >> e & 1 == 1)
                .map(|&b| squeeze(b & !(1 << e), e))
                .collect()
        };
        Self::from_sets(self.ground_size - 1, sets)
    }

    pub fn minors(&self, e: usize) -> Result<(Matroid, Matroid)> {
        Ok((self.deletion(e)?, self.contraction(e)?))
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.ground_size {
            return Err(Error::Validation(format!(
                "element {e} outside the ground set of size {}",
                self.ground_size
            )));
        }
        Ok(())
    }

    /// Image under a permutation of the ground set, `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        let mut bases: Vec<Set> = self
            .bases
            .iter()
            .map(|&b| bits(b).fold(0, |acc, e| acc | (1 << perm[e])))
            .collect();
        bases.sort_unstable();
        Matroid {
            ground_size: self.ground_size,
            rank: self.rank,
            bases,
        }
    }
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let n = uf[y];
        uf[y] = r;
        y = n;
    }
    r
}

/// Removes position `e` from a bitmask, shifting higher elements down.
fn squeeze(s: Set, e: usize) -> Set {
    let low = s & ((1u64 << e) - 1);
    let high = (s >> (e + 1)) << e;
    low | high
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_flats_and_flags() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.proper_flats(), vec![0b001, 0b010, 0b100]);
        let u34 = Matroid::uniform(3, 4).unwrap();
        assert_eq!(u34.proper_flats().len(), 10);
        assert_eq!(u34.maximal_flags().len(), 12);
    }

    #[test]
    fn exchange_is_enforced() {
        // {0,1},{2,3}: removing 0 from {0,1} needs 2 or 3 to complete it
        assert!(Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]).is_err());
        assert!(Matroid::from_bases(3, &[vec![0, 1], vec![0, 2]]).is_ok());
    }

    #[test]
    fn triangle_is_uniform() {
        let t = Matroid::from_graph(&[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(t, Matroid::uniform(2, 3).unwrap());
        let (del, con) = t.minors(2).unwrap();
        assert_eq!(del, Matroid::uniform(2, 2).unwrap());
        assert_eq!(con, Matroid::uniform(1, 2).unwrap());
    }

    #[test]
    fn squeeze_drops_a_bit() {
        assert_eq!(squeeze(0b1011, 1), 0b101);
        assert_eq!(squeeze(0b1011, 0), 0b101);
        assert_eq!(squeeze(0b1011, 3), 0b011);
    }
}
