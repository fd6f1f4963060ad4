//! Polyhedral complexes in `R^a x T^b` and their face posets.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::polyhedron::Polyhedron;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Cell {
    pub polyhedron: Polyhedron,
    /// Cells covered by this one in the face poset.
    pub faces: Vec<usize>,
    /// Cells covering this one.
    pub cofaces: Vec<usize>,
    /// Ordered basis of the integer tangent lattice.
    pub orientation: Vec<Vec<BigInt>>,
    /// Weight, present exactly on maximal cells.
    pub weight: Option<BigInt>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.polyhedron.dim()
    }

    pub fn sedentarity(&self) -> &[usize] {
        self.polyhedron.sedentarity()
    }
}

/// A face-closed family of polyhedra in a partial compactification of `R^r`.
#[derive(Clone, Debug)]
pub struct PolyhedralComplex {
    ambient_dim: usize,
    tropical_coords: Vec<usize>,
    cells: Vec<Cell>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    maximal: Vec<usize>,
    index: HashMap<Polyhedron, usize>,
}

fn describe(p: &Polyhedron) -> String {
    let vs: Vec<String> = p
        .vertices()
        .iter()
        .map(|v| {
            let c: Vec<String> = v
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    if p.sedentarity().contains(&i) {
                        "-inf".to_string()
                    } else {
                        crate::linalg::rational::format_rational(x)
                    }
                })
                .collect();
            format!("({})", c.join(","))
        })
        .collect();
    let dirs = |d: &[Vec<num_bigint::BigInt>]| -> Vec<String> {
        d.iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect()
    };
    let mut out = format!("cell[vertices {}", vs.join(" "));
    let rs = dirs(p.rays());
    if !rs.is_empty() {
        out.push_str(&format!("; rays {}", rs.join(" ")));
    }
    let ls = dirs(p.lineality());
    if !ls.is_empty() {
        out.push_str(&format!("; lineality {}", ls.join(" ")));
    }
    out.push(']');
    out
}

fn orientation_of(p: &Polyhedron) -> Vec<Vec<BigInt>> {
    if p.dim() == 1 && p.rays().len() == 1 && p.lineality().is_empty() {
        return vec![p.rays()[0].clone()];
    }
    p.lattice().basis().to_vec()
}

impl PolyhedralComplex {
    /// Builds the complex generated by the given maximal cells with weights.
    ///
    /// `tropical_coords` are the coordinates along which the complex is closed in `T`; pieces
    /// at infinity along those coordinates are added to the face poset.
    pub fn build(
        ambient_dim: usize,
        tropical_coords: &[usize],
        maximal: Vec<(Polyhedron, BigInt)>,
    ) -> Result<Self> {
        let trop: Vec<usize> = tropical_coords.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if trop.iter().any(|&i| i >= ambient_dim) {
            return Err(Error::Dimension("tropical coordinate out of range".into()));
        }
        for (p, w) in &maximal {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::Dimension(format!(
                    "cell in ambient dimension {} inside a complex of ambient dimension {}",
                    p.ambient_dim(),
                    ambient_dim
                )));
            }
            if p.sedentarity().iter().any(|i| !trop.contains(i)) {
                return Err(Error::InvalidPolyhedron(format!(
                    "{} is at -inf in a coordinate that is not tropical",
                    describe(p)
                )));
            }
            if !w.is_positive() {
                return Err(Error::Validation(format!("weight {w} of {} is not positive", describe(p))));
            }
        }

        let mut pieces: Vec<Vec<Polyhedron>> = Vec::with_capacity(maximal.len());
        let mut piece_faces: Vec<Vec<HashSet<Polyhedron>>> = Vec::with_capacity(maximal.len());
        for (p, _) in &maximal {
            let mut ps = vec![p.clone()];
            ps.extend(p.boundary_pieces(&trop));
            piece_faces.push(ps.iter().map(|q| q.faces().into_iter().collect()).collect());
            pieces.push(ps);
        }

        for a in 0..maximal.len() {
            for b in a + 1..maximal.len() {
                let (pa, pb) = (&maximal[a].0, &maximal[b].0);
                if pa == pb {
                    return Err(Error::ComplexAxiom {
                        first: describe(pa),
                        second: describe(pb),
                        reason: "duplicate maximal cell".into(),
                    });
                }
                for (ia, qa) in pieces[a].iter().enumerate() {
                    for (ib, qb) in pieces[b].iter().enumerate() {
                        if qa.sedentarity() != qb.sedentarity() {
                            continue;
                        }
                        let Some(inter) = qa.intersection(qb)? else { continue };
                        if (ia == 0 && inter == *pa) || (ib == 0 && inter == *pb) {
                            return Err(Error::ComplexAxiom {
                                first: describe(pa),
                                second: describe(pb),
                                reason: "one maximal cell lies in the closure of another".into(),
                            });
                        }
                        if !piece_faces[a][ia].contains(&inter) || !piece_faces[b][ib].contains(&inter) {
                            return Err(Error::ComplexAxiom {
                                first: describe(pa),
                                second: describe(pb),
                                reason: format!("intersection {} is not a common face", describe(&inter)),
                            });
                        }
                    }
                }
            }
        }

        let mut all: Vec<Polyhedron> = Vec::new();
        let mut ids: HashMap<Polyhedron, usize> = HashMap::new();
        let mut local: Vec<Vec<usize>> = Vec::with_capacity(maximal.len());
        for faces in &piece_faces {
            let mut loc = BTreeSet::new();
            for set in faces {
                for f in set {
                    let id = *ids.entry(f.clone()).or_insert_with(|| {
                        all.push(f.clone());
                        all.len() - 1
                    });
                    loc.insert(id);
                }
            }
            local.push(loc.into_iter().collect());
        }

        let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); all.len()];
        let mut piece_cache: HashMap<(usize, Vec<usize>), Option<Polyhedron>> = HashMap::new();
        for loc in &local {
            for &s in loc {
                for &t in loc {
                    if s == t || below[s].contains(&t) {
                        continue;
                    }
                    let (ps, pt) = (&all[s], &all[t]);
                    if pt.dim() >= ps.dim() {
                        continue;
                    }
                    let ss: BTreeSet<usize> = ps.sedentarity().iter().copied().collect();
                    let st: BTreeSet<usize> = pt.sedentarity().iter().copied().collect();
                    if !ss.is_subset(&st) {
                        continue;
                    }
                    let le = if ss == st {
                        ps.contains(pt)
                    } else {
                        let piece = piece_cache
                            .entry((s, pt.sedentarity().to_vec()))
                            .or_insert_with(|| ps.stratum_piece(pt.sedentarity()));
                        piece.as_ref().is_some_and(|q| q.contains(pt))
                    };
                    if le {
                        below[s].insert(t);
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..all.len()).collect();
        order.sort_by(|&x, &y| all[x].cmp(&all[y]));
        let mut new_id = vec![0; all.len()];
        for (n, &o) in order.iter().enumerate() {
            new_id[o] = n;
        }
        let weight_of: HashMap<&Polyhedron, &BigInt> = maximal.iter().map(|(p, w)| (p, w)).collect();
        let mut cells: Vec<Cell> = order
            .iter()
            .map(|&o| Cell {
                polyhedron: all[o].clone(),
                faces: Vec::new(),
                cofaces: Vec::new(),
                orientation: orientation_of(&all[o]),
                weight: weight_of.get(&all[o]).map(|w| (*w).clone()),
            })
            .collect();
        let mut below_new: Vec<Vec<usize>> = vec![Vec::new(); all.len()];
        for (o, set) in below.iter().enumerate() {
            let mut v: Vec<usize> = set.iter().map(|&t| new_id[t]).collect();
            v.sort_unstable();
            below_new[new_id[o]] = v;
        }
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); all.len()];
        for (s, bs) in below_new.iter().enumerate() {
            for &t in bs {
                above[t].push(s);
            }
        }
        for s in 0..cells.len() {
            let bs: HashSet<usize> = below_new[s].iter().copied().collect();
            let covers: Vec<usize> = below_new[s]
                .iter()
                .copied()
                .filter(|&t| !below_new[s].iter().any(|&r| r != t && below_new[r].binary_search(&t).is_ok() && bs.contains(&r)))
                .collect();
            for &t in &covers {
                cells[t].cofaces.push(s);
            }
            cells[s].faces = covers;
        }
        let maximal_ids: Vec<usize> = (0..cells.len()).filter(|&i| above[i].is_empty()).collect();
        for &m in &maximal_ids {
            if cells[m].weight.is_none() {
                return Err(Error::InternalConsistency(format!(
                    "maximal cell {} was not among the inputs",
                    describe(&cells[m].polyhedron)
                )));
            }
        }
        let index = cells.iter().enumerate().map(|(i, c)| (c.polyhedron.clone(), i)).collect();
        Ok(PolyhedralComplex {
            ambient_dim,
            tropical_coords: trop,
            cells,
            below: below_new,
            above,
            maximal: maximal_ids,
            index,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn tropical_coords(&self) -> &[usize] {
        &self.tropical_coords
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(Cell::dim).max().unwrap_or(0)
    }

    /// Maximal cells, in cell order.
    pub fn maximal_cells(&self) -> &[usize] {
        &self.maximal
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.maximal.iter().all(|&m| self.cells[m].dim() == d)
    }

    pub fn weight(&self, i: usize) -> Option<&BigInt> {
        self.cells[i].weight.as_ref()
    }

    pub fn find(&self, p: &Polyhedron) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// All cells strictly below `i`.
    pub fn below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    /// All cells strictly above `i`.
    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    /// Whether `t` is a face of `s` (including `t == s`).
    pub fn is_face(&self, t: usize, s: usize) -> bool {
        t == s || self.below[s].binary_search(&t).is_ok()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim() == d).collect()
    }

    /// Cofaces with the same sedentarity, including the cell itself.
    pub fn same_sedentarity_cofaces(&self, i: usize) -> Vec<usize> {
        let sed = self.cells[i].sedentarity();
        let mut v = vec![i];
        v.extend(self.above[i].iter().copied().filter(|&s| self.cells[s].sedentarity() == sed));
        v
    }

    /// Distinct sedentarities occurring in the complex, sorted.
    pub fn sedentarities(&self) -> Vec<Vec<usize>> {
        let s: BTreeSet<Vec<usize>> = self.cells.iter().map(|c| c.sedentarity().to_vec()).collect();
        s.into_iter().collect()
    }

    /// Maximal cells with weights, suitable for rebuilding.
    pub fn weighted_maximal_cells(&self) -> Vec<(Polyhedron, BigInt)> {
        self.maximal
            .iter()
            .map(|&m| (self.cells[m].polyhedron.clone(), self.cells[m].weight.clone().expect("weighted")))
            .collect()
    }

    /// The facets, meaning the top-dimensional cells, of a pure complex.
    pub fn facets(&self) -> Vec<usize> {
        let d = self.dim();
        self.maximal.iter().copied().filter(|&m| self.cells[m].dim() == d).collect()
    }

    pub fn describe_cell(&self, i: usize) -> String {
        describe(&self.cells[i].polyhedron)
    }

    pub fn require_pure(&self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            Err(Error::Purity(format!(
                "maximal cells have dimensions {:?}",
                self.maximal.iter().map(|&m| self.cells[m].dim()).collect::<BTreeSet<_>>()
            )))
        }
    }

    /// Sum of weights of facets; used in summaries.
    pub fn total_weight(&self) -> BigInt {
        self.maximal
            .iter()
            .filter_map(|&m| self.cells[m].weight.clone())
            .fold(BigInt::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{ints, rats};

    fn ray(n: usize, r: &[i64]) -> Polyhedron {
        Polyhedron::from_generators(n, &[], &[vec![num_rational::BigRational::zero(); n]], &[ints(r)], &[]).unwrap()
    }

    pub(crate) fn tropical_line() -> PolyhedralComplex {
        let one = BigInt::from(1);
        PolyhedralComplex::build(
            2,
            &[],
            vec![
                (ray(2, &[-1, 0]), one.clone()),
                (ray(2, &[0, -1]), one.clone()),
                (ray(2, &[1, 1]), one),
            ],
        )
        .unwrap()
    }

    #[test]
    fn line_face_poset() {
        let c = tropical_line();
        assert_eq!(c.len(), 4);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.cell(0).dim(), 0);
        assert_eq!(c.cell(0).cofaces.len(), 3);
        assert_eq!(c.maximal_cells(), &[1, 2, 3]);
        assert!(c.is_pure());
    }

    #[test]
    fn closure_adds_points_at_infinity() {
        let one = BigInt::from(1);
        let c = PolyhedralComplex::build(1, &[0], vec![(ray(1, &[-1]), one.clone()), (ray(1, &[1]), one)]).unwrap();
        assert_eq!(c.len(), 4);
        let inf = c.cells().iter().position(|x| x.sedentarity() == [0]).unwrap();
        assert_eq!(c.cell(inf).cofaces.len(), 1);
        assert_eq!(c.maximal_cells().len(), 2);
    }

    #[test]
    fn overlapping_cells_are_rejected() {
        let one = BigInt::from(1);
        let a = Polyhedron::from_generators(1, &[], &[rats(&[0]), rats(&[2])], &[], &[]).unwrap();
        let b = Polyhedron::from_generators(1, &[], &[rats(&[1]), rats(&[3])], &[], &[]).unwrap();
        let r = PolyhedralComplex::build(1, &[], vec![(a.clone(), one.clone()), (b, one.clone())]);
        assert!(matches!(r, Err(Error::ComplexAxiom { .. })));
        let r = PolyhedralComplex::build(1, &[], vec![(a.clone(), one.clone()), (a, one)]);
        assert!(matches!(r, Err(Error::ComplexAxiom { .. })));
    }

    #[test]
    fn contained_maximal_cell_is_rejected() {
        let one = BigInt::from(1);
        let a = Polyhedron::from_generators(1, &[], &[rats(&[0]), rats(&[2])], &[], &[]).unwrap();
        let b = Polyhedron::point(&rats(&[0]));
        let r = PolyhedralComplex::build(1, &[], vec![(a, one.clone()), (b, one)]);
        assert!(matches!(r, Err(Error::ComplexAxiom { .. })));
    }
}
