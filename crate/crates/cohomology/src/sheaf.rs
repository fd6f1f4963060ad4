//! Cellular sheaves and cosheaves on finite graded posets.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::RationalMatrix;
use tropcoh_core::polyhedral::{incidence_sign, PolyhedralComplex};

use super::multitangent::MultiTangent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Maps go from a face to its coface.
    Sheaf,
    /// Maps go from a coface to its face.
    Cosheaf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafCell {
    pub label: String,
    pub dim: usize,
    pub space_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub matrix: RationalMatrix,
    /// Incidence sign used by the cellular coboundary.
    pub sign: i32,
}

/// A poset with a vector space per cell and a matrix per covering pair `(face, coface)`.
#[derive(Clone, Debug)]
pub struct CellularSheafDatum {
    pub cells: Vec<SheafCell>,
    pub relations: BTreeMap<(usize, usize), Relation>,
    pub direction: Direction,
    below: Vec<Vec<usize>>,
}

impl CellularSheafDatum {
    /// Assembles a datum and checks shapes, covering dimensions and diamond commutation.
    pub fn new(
        cells: Vec<SheafCell>,
        relations: BTreeMap<(usize, usize), Relation>,
        direction: Direction,
    ) -> Result<Self> {
        let n = cells.len();
        for (&(t, s), r) in &relations {
            if t >= n || s >= n {
                return Err(Error::Validation(format!("relation ({t}, {s}) refers to an unknown cell")));
            }
            if cells[s].dim != cells[t].dim + 1 {
                return Err(Error::Validation(format!(
                    "relation between {} (dim {}) and {} (dim {}) is not a cover of codimension one",
                    cells[t].label, cells[t].dim, cells[s].label, cells[s].dim
                )));
            }
            let (rows, cols) = match direction {
                Direction::Sheaf => (cells[s].space_dim, cells[t].space_dim),
                Direction::Cosheaf => (cells[t].space_dim, cells[s].space_dim),
            };
            if r.matrix.nrows() != rows || r.matrix.ncols() != cols {
                return Err(Error::Validation(format!(
                    "map between {} and {} has shape {}x{}, expected {}x{}",
                    cells[t].label,
                    cells[s].label,
                    r.matrix.nrows(),
                    r.matrix.ncols(),
                    rows,
                    cols
                )));
            }
            if r.sign != 1 && r.sign != -1 {
                return Err(Error::Validation("incidence signs must be +1 or -1".into()));
            }
        }
        let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| cells[i].dim);
        let mut faces: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(t, s) in relations.keys() {
            faces[s].push(t);
        }
        for &s in &order {
            let mut set = BTreeSet::new();
            for &t in &faces[s] {
                set.insert(t);
                set.extend(below[t].iter().copied());
            }
            below[s] = set;
        }
        let datum = CellularSheafDatum {
            cells,
            relations,
            direction,
            below: below.into_iter().map(|s| s.into_iter().collect()).collect(),
        };
        datum.check_diamonds()?;
        Ok(datum)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn below(&self, s: usize) -> &[usize] {
        &self.below[s]
    }

    pub fn is_below(&self, t: usize, s: usize) -> bool {
        self.below[s].binary_search(&t).is_ok()
    }

    pub fn covers_above(&self, t: usize) -> Vec<usize> {
        self.relations.keys().filter(|k| k.0 == t).map(|k| k.1).collect()
    }

    /// Sheaf-direction matrix of a cover `t < s`: `F(t) -> F(s)`.
    fn sheaf_matrix(&self, t: usize, s: usize) -> RationalMatrix {
        let r = &self.relations[&(t, s)].matrix;
        match self.direction {
            Direction::Sheaf => r.clone(),
            Direction::Cosheaf => r.transpose(),
        }
    }

    fn check_diamonds(&self) -> Result<()> {
        let mut up: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(t, s) in self.relations.keys() {
            up.entry(t).or_default().push(s);
        }
        for t in 0..self.cells.len() {
            let mut through: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &m in up.get(&t).map(Vec::as_slice).unwrap_or(&[]) {
                for &s in up.get(&m).map(Vec::as_slice).unwrap_or(&[]) {
                    through.entry(s).or_default().push(m);
                }
            }
            for (s, mids) in through {
                let first = self.sheaf_matrix(mids[0], s).mul(&self.sheaf_matrix(t, mids[0]))?;
                for &m in &mids[1..] {
                    let other = self.sheaf_matrix(m, s).mul(&self.sheaf_matrix(t, m))?;
                    if other != first {
                        return Err(Error::Validation(format!(
                            "maps do not commute on the diamond from {} to {}",
                            self.cells[t].label, self.cells[s].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Sheaf-direction maps `F(t) -> F(s)` for every comparable pair, composed along covers.
    pub fn composite_maps(&self) -> Result<HashMap<(usize, usize), RationalMatrix>> {
        let mut out: HashMap<(usize, usize), RationalMatrix> = HashMap::new();
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by_key(|&i| self.cells[i].dim);
        let mut faces: Vec<Vec<usize>> = vec![Vec::new(); self.cells.len()];
        for &(t, s) in self.relations.keys() {
            faces[s].push(t);
        }
        for &s in &order {
            for &t in &self.below[s] {
                let m = faces[s]
                    .iter()
                    .copied()
                    .find(|&m| m == t || self.is_below(t, m))
                    .expect("a cover lies between comparable cells");
                let direct = self.sheaf_matrix(m, s);
                let map = if m == t { direct } else { direct.mul(&out[&(t, m)])? };
                out.insert((t, s), map);
            }
        }
        Ok(out)
    }

    /// The same data with all maps in the sheaf direction.
    pub fn to_sheaf(&self) -> CellularSheafDatum {
        if self.direction == Direction::Sheaf {
            return self.clone();
        }
        let relations = self
            .relations
            .iter()
            .map(|(k, r)| {
                (
                    *k,
                    Relation {
                        matrix: r.matrix.transpose(),
                        sign: r.sign,
                    },
                )
            })
            .collect();
        CellularSheafDatum {
            cells: self.cells.clone(),
            relations,
            direction: Direction::Sheaf,
            below: self.below.clone(),
        }
    }
}

/// Incidence signs for an abstract poset: on each cell, facets are signed so that every
/// codimension-two face sees opposite contributions. A cell with exactly two vertices gets
/// `-1` on the first and `+1` on the second.
pub fn automatic_signs(dims: &[usize], covers: &[(usize, usize)]) -> BTreeMap<(usize, usize), i32> {
    let n = dims.len();
    let mut faces: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(t, s) in covers {
        faces[s].push(t);
    }
    for f in faces.iter_mut() {
        f.sort_unstable();
    }
    let mut sign: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| dims[i]);
    for &s in &order {
        if faces[s].is_empty() {
            continue;
        }
        if dims[s] == 1 {
            for (k, &t) in faces[s].iter().enumerate() {
                let v = if faces[s].len() == 2 && k == 0 { -1 } else { 1 };
                sign.insert((t, s), v);
            }
            continue;
        }
        let fs = &faces[s];
        let mut assigned: HashMap<usize, i32> = HashMap::new();
        for &start in fs {
            if assigned.contains_key(&start) {
                continue;
            }
            assigned.insert(start, 1);
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for &b in fs {
                    if assigned.contains_key(&b) {
                        continue;
                    }
                    let shared = faces[a].iter().find(|r| faces[b].contains(r));
                    if let Some(&r) = shared {
                        let sa = sign.get(&(r, a)).copied().unwrap_or(1);
                        let sb = sign.get(&(r, b)).copied().unwrap_or(1);
                        let v = -sa * assigned[&a] * sb;
                        assigned.insert(b, v);
                        queue.push_back(b);
                    }
                }
            }
        }
        for (&t, &v) in &assigned {
            sign.insert((t, s), v);
        }
    }
    sign
}

/// `F^p` on the cells of a complex, with maps `r` dual to the inclusions `i`.
pub fn build_sheaf(c: &PolyhedralComplex, p: usize) -> Result<CellularSheafDatum> {
    Ok(build_cosheaf(c, p)?.to_sheaf())
}

/// `F_p` on the cells of a complex, with the inclusion maps `i`.
pub fn build_cosheaf(c: &PolyhedralComplex, p: usize) -> Result<CellularSheafDatum> {
    let mt = MultiTangent::new(c, p);
    let cells: Vec<SheafCell> = (0..c.len())
        .map(|i| SheafCell {
            label: format!("c{i}"),
            dim: c.cell(i).dim(),
            space_dim: mt.spaces[i].dim(),
        })
        .collect();
    let mut relations = BTreeMap::new();
    for s in 0..c.len() {
        for &t in &c.cell(s).faces {
            if c.cell(t).dim() + 1 != c.cell(s).dim() {
                return Err(Error::InternalConsistency("face poset is not graded".into()));
            }
            let matrix = mt.inclusion_map(c, t, s)?;
            let sign = incidence_sign(c, t, s)?;
            relations.insert((t, s), Relation { matrix, sign });
        }
    }
    CellularSheafDatum::new(cells, relations, Direction::Cosheaf)
        .map_err(|e| Error::InternalConsistency(format!("multi-tangent system: {e}")))
}
