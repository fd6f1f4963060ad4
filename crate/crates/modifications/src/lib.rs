//! Open and closed tropical modifications along piecewise integer-affine functions.

pub mod pl;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::lattice::{integer_solution, lattice_index, Lattice};
use tropcoh_core::linalg::rational::{ints_to_rats, Rational};
use tropcoh_core::linalg::RationalMatrix;
use tropcoh_core::polyhedral::ops::restrict_to_stratum;
use tropcoh_core::polyhedral::{balancing_report, AffineForm, Polyhedron, PolyhedralComplex};

pub use pl::{load_plfunction, plfunction_from_json, plfunction_from_str, plfunction_to_json, AffinePiece, Mode, PLFunction};

#[derive(Clone, Debug)]
pub struct ModificationResult {
    /// The modification, in `R^{r+1}` or in `R^r × T` when closed.
    pub v: PolyhedralComplex,
    /// The source complex, refined along the domains of linearity.
    pub w: PolyhedralComplex,
    /// `None` when the divisor is empty.
    pub divisor: Option<PolyhedralComplex>,
    /// Per-facet data on `w`, indexed by position in `w.maximal_cells()`.
    pub function: PLFunction,
    /// 1-based coordinate along which `v` projects to `w`.
    pub projection_coordinate: usize,
}

fn require_mobile(c: &PolyhedralComplex, what: &str) -> Result<()> {
    if !c.tropical_coords().is_empty() {
        return Err(Error::Validation(format!("{what} must lie in real affine space")));
    }
    Ok(())
}

fn require_balanced(c: &PolyhedralComplex, what: &str) -> Result<()> {
    let rep = balancing_report(c)?;
    if !rep.balanced {
        return Err(Error::BalancingRequired(format!(
            "{what} fails balancing at {} cells",
            rep.failures.len()
        )));
    }
    Ok(())
}

/// Maximal cells of `W` cut along the domains of linearity of `P`, each with its affine piece
/// and inherited weight.
pub fn refine(w: &PolyhedralComplex, p: &PLFunction) -> Result<Vec<(Polyhedron, AffinePiece, BigInt)>> {
    require_mobile(w, "the source complex")?;
    let r = w.ambient_dim();
    if let Some(n) = p.num_vars() {
        if n != r {
            return Err(Error::Dimension(format!("function in {n} variables on a complex in R^{r}")));
        }
    }
    p.check_integral()?;
    let cells = w.weighted_maximal_cells();
    match p {
        PLFunction::Tropical { mode, terms } => {
            let mut out = Vec::new();
            for (sigma, weight) in &cells {
                let mut pieces: Vec<(Polyhedron, AffinePiece)> = Vec::new();
                for (i, ti) in terms.iter().enumerate() {
                    let mut ineqs = Vec::new();
                    for (j, tj) in terms.iter().enumerate() {
                        if i == j {
                            continue;
                        }
                        let (a, b) = match mode {
                            Mode::Max => (ti, tj),
                            Mode::Min => (tj, ti),
                        };
                        let normal: Vec<Rational> = a.linear.iter().zip(&b.linear).map(|(x, y)| x - y).collect();
                        let constant = &a.constant - &b.constant;
                        if normal.iter().all(Zero::is_zero) {
                            if constant.is_negative() {
                                ineqs.push(AffineForm::from_rational(&normal, &Rational::from_integer((-1).into())));
                            }
                            continue;
                        }
                        ineqs.push(AffineForm::from_rational(&normal, &constant));
                    }
                    if let Some(q) = sigma.cut(&[], &ineqs)? {
                        if q.dim() == sigma.dim() && !pieces.iter().any(|(x, _)| *x == q) {
                            pieces.push((q, ti.clone()));
                        }
                    }
                }
                out.extend(pieces.into_iter().map(|(q, t)| (q, t, weight.clone())));
            }
            Ok(out)
        }
        PLFunction::PerFacet { pieces } => {
            let mut assigned: Vec<Option<AffinePiece>> = vec![None; cells.len()];
            for (id, piece) in pieces {
                let slot = assigned
                    .get_mut(*id)
                    .ok_or_else(|| Error::Validation(format!("cell_id {id} is not a maximal cell")))?;
                if slot.is_some() {
                    return Err(Error::Validation(format!("cell_id {id} is given twice")));
                }
                *slot = Some(piece.clone());
            }
            let assigned: Vec<AffinePiece> = assigned
                .into_iter()
                .enumerate()
                .map(|(i, a)| a.ok_or_else(|| Error::Validation(format!("no affine data for maximal cell {i}"))))
                .collect::<Result<_>>()?;
            check_continuity(&cells, &assigned)?;
            Ok(cells
                .into_iter()
                .zip(assigned)
                .map(|((q, w), a)| (q, a, w))
                .collect())
        }
    }
}

fn check_continuity(cells: &[(Polyhedron, BigInt)], pieces: &[AffinePiece]) -> Result<()> {
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let Some(tau) = cells[i].0.intersection(&cells[j].0)? else { continue };
            let agree = tau.vertices().iter().all(|v| pieces[i].eval(v) == pieces[j].eval(v))
                && tau.rays().iter().chain(tau.lineality()).all(|d| {
                    let d = ints_to_rats(d);
                    tropcoh_core::linalg::rational::dot(&pieces[i].linear, &d)
                        == tropcoh_core::linalg::rational::dot(&pieces[j].linear, &d)
                });
            if !agree {
                return Err(Error::Validation(format!(
                    "affine data on maximal cells {i} and {j} disagree on their common face"
                )));
            }
        }
    }
    Ok(())
}

fn lift(q: &Polyhedron, a: &AffinePiece) -> Result<Polyhedron> {
    let r = q.ambient_dim();
    let linear = |x: &[Rational]| {
        let mut y = x.to_vec();
        y.push(tropcoh_core::linalg::rational::dot(&a.linear, x));
        y
    };
    let mut t = vec![Rational::zero(); r];
    t.push(a.constant.clone());
    q.affine_image(r + 1, &[], &linear, &t)
}

/// `Γ_P(W)` in `R^{r+1}` with weights inherited from `W`.
pub fn graph_complex(w: &PolyhedralComplex, p: &PLFunction) -> Result<PolyhedralComplex> {
    let pieces = refine(w, p)?;
    let lifted = pieces
        .iter()
        .map(|(q, a, m)| Ok((lift(q, a)?, m.clone())))
        .collect::<Result<Vec<_>>>()?;
    PolyhedralComplex::build(w.ambient_dim() + 1, &[], lifted)
}

fn per_facet_function(refined: &PolyhedralComplex, pieces: &[(Polyhedron, AffinePiece, BigInt)]) -> Result<PLFunction> {
    let maximal = refined.maximal_cells();
    let mut out = Vec::new();
    for (q, a, _) in pieces {
        let id = refined
            .find(q)
            .and_then(|c| maximal.iter().position(|&m| m == c))
            .ok_or_else(|| Error::InternalConsistency("refined piece missing from the refined complex".into()))?;
        out.push((id, a.clone()));
    }
    out.sort_by_key(|x| x.0);
    Ok(PLFunction::PerFacet { pieces: out })
}

/// Balancing completion of the graph by downward facets, with the divisor they project to.
pub fn complete_modification(w: &PolyhedralComplex, p: &PLFunction) -> Result<ModificationResult> {
    require_mobile(w, "the source complex")?;
    require_balanced(w, "the source complex")?;
    let r = w.ambient_dim();
    let pieces = refine(w, p)?;
    let refined = PolyhedralComplex::build(
        r,
        &[],
        pieces.iter().map(|(q, _, m)| (q.clone(), m.clone())).collect(),
    )?;
    let lifted = pieces
        .iter()
        .map(|(q, a, m)| Ok((lift(q, a)?, m.clone())))
        .collect::<Result<Vec<_>>>()?;
    let gamma = PolyhedralComplex::build(r + 1, &[], lifted)?;
    let report = balancing_report(&gamma)?;
    let mut down = vec![BigInt::zero(); r + 1];
    down[r] = -BigInt::one();
    let mut e = vec![Rational::zero(); r + 1];
    e[r] = Rational::one();
    let mut cells = gamma.weighted_maximal_cells();
    let mut divisor = Vec::new();
    for f in &report.failures {
        let face = &gamma.cell(f.cell).polyhedron;
        let tangent = face.tangent();
        let defect = ints_to_rats(&f.defect);
        let rd = tangent.reduce(&defect);
        let re = tangent.reduce(&e);
        let k = re
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::Modification("a codimension-one face of the graph is vertical".into()))?;
        let c = &rd[k] / &re[k];
        let proportional = rd.iter().zip(&re).all(|(a, b)| *a == &c * b);
        if !proportional || !c.is_integer() || !c.is_positive() {
            return Err(Error::Modification(format!(
                "defect at {} is not a positive integer multiple of -e_{}",
                gamma.describe_cell(f.cell),
                r + 1
            )));
        }
        let mut rest = f.defect.clone();
        rest[r] -= c.to_integer();
        if !face.lattice().contains(&rest) {
            return Err(Error::Modification(format!(
                "defect at {} leaves the face lattice",
                gamma.describe_cell(f.cell)
            )));
        }
        let mut rays = face.rays().to_vec();
        rays.push(down.clone());
        let attached = Polyhedron::from_generators(r + 1, &[], face.vertices(), &rays, face.lineality())?;
        cells.push((attached, c.to_integer()));
        divisor.push((drop_last(face)?, c.to_integer()));
    }
    let v = PolyhedralComplex::build(r + 1, &[], cells)?;
    if !balancing_report(&v)?.balanced {
        return Err(Error::InternalConsistency("completed modification is not balanced".into()));
    }
    let divisor = if divisor.is_empty() {
        None
    } else {
        Some(PolyhedralComplex::build(r, &[], divisor)?)
    };
    let function = per_facet_function(&refined, &pieces)?;
    Ok(ModificationResult {
        v,
        w: refined,
        divisor,
        function,
        projection_coordinate: r + 1,
    })
}

fn drop_coordinate(q: &Polyhedron, i: usize) -> Result<Polyhedron> {
    let n = q.ambient_dim();
    let linear = |x: &[Rational]| {
        let mut y = x.to_vec();
        y.remove(i);
        y
    };
    q.affine_image(n - 1, &[], &linear, &vec![Rational::zero(); n - 1])
}

fn drop_last(q: &Polyhedron) -> Result<Polyhedron> {
    drop_coordinate(q, q.ambient_dim() - 1)
}

fn drop_int(v: &[BigInt], i: usize) -> Vec<BigInt> {
    let mut v = v.to_vec();
    v.remove(i);
    v
}

/// `[Z(π σ) : π Z(σ)]`.
fn pushforward_index(sigma: &Polyhedron, image: &Polyhedron, i: usize) -> Result<BigInt> {
    let gens: Vec<Vec<BigInt>> = sigma.lattice().basis().iter().map(|b| drop_int(b, i)).collect();
    let inner = Lattice::from_generators(image.ambient_dim(), &gens);
    lattice_index(image.lattice(), &inner)
}

/// Affine piece of the fiber coordinate over the projection of a non-vertical cell.
fn fiber_function(sigma: &Polyhedron, image: &Polyhedron, i: usize) -> Result<AffinePiece> {
    let n = sigma.ambient_dim();
    let sub = sigma.tangent();
    let projected: Vec<Vec<Rational>> = sub
        .basis()
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.remove(i);
            b
        })
        .collect();
    let pm = RationalMatrix::from_rows(n - 1, &projected)?;
    let mut values = Vec::new();
    for b in image.lattice().basis() {
        let coeffs = pm
            .solve_left(&ints_to_rats(b))
            .ok_or_else(|| Error::InternalConsistency("projected lattice vector outside the image".into()))?;
        let lifted = coeffs
            .iter()
            .zip(sub.basis())
            .fold(Rational::zero(), |acc, (c, row)| acc + c * &row[i]);
        if !lifted.is_integer() {
            return Err(Error::NotAModification(
                "the fiber coordinate has a non-integral slope over a facet".into(),
            ));
        }
        values.push(lifted.to_integer());
    }
    let a = integer_solution(n - 1, image.lattice().basis(), &values)?
        .ok_or_else(|| Error::NotAModification("slopes do not extend to an integer covector".into()))?;
    let a = ints_to_rats(&a);
    let v = &sigma.vertices()[0];
    let mut pv = v.clone();
    pv.remove(i);
    let constant = &v[i] - tropcoh_core::linalg::rational::dot(&a, &pv);
    Ok(AffinePiece { linear: a, constant })
}

/// Analyses the projection of `V` forgetting coordinate `i` (1-based).
pub fn project_modification(v: &PolyhedralComplex, i: usize) -> Result<ModificationResult> {
    require_mobile(v, "the modification")?;
    let n = v.ambient_dim();
    if i == 0 || i > n {
        return Err(Error::Validation(format!("coordinate {i} out of range 1..{n}")));
    }
    if n == 0 {
        return Err(Error::Validation("cannot project a complex in R^0".into()));
    }
    require_balanced(v, "the modification")?;
    let k = i - 1;
    let mut up = vec![BigInt::zero(); n];
    up[k] = BigInt::one();
    let mut down = vec![BigInt::zero(); n];
    down[k] = -BigInt::one();
    let e: Vec<Rational> = ints_to_rats(&up);
    let mut graph_cells = Vec::new();
    let mut pieces = Vec::new();
    let mut divisor = Vec::new();
    for (sigma, m) in v.weighted_maximal_cells() {
        if sigma.contains_direction(&up) {
            return Err(Error::NotAModification(format!(
                "fibers over {} are unbounded upwards",
                tropcoh_core::polyhedral::io::polyhedron_to_json(&sigma)
            )));
        }
        let image = drop_coordinate(&sigma, k)?;
        let idx = pushforward_index(&sigma, &image, k)?;
        if sigma.tangent().contains(&e) {
            if sigma.contains_direction(&down) {
                divisor.push((image, m * idx));
            }
        } else {
            let piece = fiber_function(&sigma, &image, k)?;
            graph_cells.push((image.clone(), m * idx));
            pieces.push((image, piece));
        }
    }
    for a in 0..graph_cells.len() {
        for b in a + 1..graph_cells.len() {
            if let Some(x) = graph_cells[a].0.intersection(&graph_cells[b].0)? {
                if x.dim() == graph_cells[a].0.dim() && x.dim() == graph_cells[b].0.dim() {
                    return Err(Error::NotAModification("fibers over a facet contain several points".into()));
                }
            }
        }
    }
    let w = PolyhedralComplex::build(n - 1, &[], graph_cells)?;
    let maximal = w.maximal_cells();
    let mut per_facet = Vec::new();
    for (q, a) in pieces {
        let id = w
            .find(&q)
            .and_then(|c| maximal.iter().position(|&x| x == c))
            .ok_or_else(|| Error::NotAModification("projected facets do not form a pure complex".into()))?;
        per_facet.push((id, a));
    }
    per_facet.sort_by_key(|x| x.0);
    let function = PLFunction::PerFacet { pieces: per_facet };
    let divisor = if divisor.is_empty() {
        None
    } else {
        Some(PolyhedralComplex::build(n - 1, &[], divisor).map_err(|e| {
            Error::NotAModification(format!("downward fibers do not project to a complex: {e}"))
        })?)
    };
    let rebuilt = complete_modification(&w, &function).map_err(|e| match e {
        Error::Modification(s) => Error::NotAModification(s),
        other => other,
    })?;
    let reordered = move_coordinate_last(v, k)?;
    if !equal_up_to_refinement(&rebuilt.v, &reordered)? {
        return Err(Error::NotAModification(
            "completing the projected graph does not reproduce the complex".into(),
        ));
    }
    let same_divisor = match (&divisor, &rebuilt.divisor) {
        (None, None) => true,
        (Some(a), Some(b)) => equal_up_to_refinement(a, b)?,
        _ => false,
    };
    if !same_divisor {
        return Err(Error::NotAModification("downward fibers disagree with the balancing divisor".into()));
    }
    Ok(ModificationResult {
        v: v.clone(),
        w,
        divisor,
        function,
        projection_coordinate: i,
    })
}

/// Permutes coordinate `k` to the last position.
fn move_coordinate_last(c: &PolyhedralComplex, k: usize) -> Result<PolyhedralComplex> {
    let n = c.ambient_dim();
    let linear = |x: &[Rational]| {
        let mut y = x.to_vec();
        let t = y.remove(k);
        y.push(t);
        y
    };
    let cells = c
        .weighted_maximal_cells()
        .into_iter()
        .map(|(p, m)| Ok((p.affine_image(n, &[], &linear, &vec![Rational::zero(); n])?, m)))
        .collect::<Result<Vec<_>>>()?;
    PolyhedralComplex::build(n, &[], cells)
}

/// The closure of the modification in `R^r × T`, with faces at `x_{r+1} = -inf`.
pub fn closed_modification(w: &PolyhedralComplex, p: &PLFunction) -> Result<ModificationResult> {
    let open = complete_modification(w, p)?;
    let r = w.ambient_dim();
    let v = PolyhedralComplex::build(r + 1, &[r], open.v.weighted_maximal_cells())?;
    let sedentary = restrict_to_stratum(&v, &[r])?;
    let consistent = match &open.divisor {
        None => !v.cells().iter().any(|c| !c.sedentarity().is_empty()),
        Some(d) => equal_up_to_refinement(d, &sedentary)?,
    };
    if !consistent {
        return Err(Error::InternalConsistency("sedentary part of the closure differs from the divisor".into()));
    }
    Ok(ModificationResult { v, ..open })
}

/// Same support and same weights on a common refinement. Both complexes must be pure, in the
/// same real affine space.
pub fn equal_up_to_refinement(a: &PolyhedralComplex, b: &PolyhedralComplex) -> Result<bool> {
    if a.ambient_dim() != b.ambient_dim() {
        return Ok(false);
    }
    require_mobile(a, "compared complexes")?;
    require_mobile(b, "compared complexes")?;
    a.require_pure()?;
    b.require_pure()?;
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let fa = a.weighted_maximal_cells();
    let fb = b.weighted_maximal_cells();
    Ok(covered_by(&fa, &fb)? && covered_by(&fb, &fa)?)
}

/// Every facet of `xs` is the union of its full-dimensional intersections with facets of `ys`,
/// and weights agree on those intersections.
fn covered_by(xs: &[(Polyhedron, BigInt)], ys: &[(Polyhedron, BigInt)]) -> Result<bool> {
    for (x, mx) in xs {
        let n = x.dim();
        let mut pieces = Vec::new();
        for (y, my) in ys {
            if let Some(q) = x.intersection(y)? {
                if q.dim() == n {
                    if mx != my {
                        return Ok(false);
                    }
                    pieces.push(q);
                }
            }
        }
        if pieces.is_empty() {
            return Ok(false);
        }
        if n == 0 {
            continue;
        }
        let boundary: Vec<Polyhedron> = x.faces().into_iter().filter(|f| f.dim() + 1 == n).collect();
        let piece_faces: Vec<Vec<Polyhedron>> = pieces
            .iter()
            .map(|p| p.faces().into_iter().filter(|f| f.dim() + 1 == n).collect())
            .collect();
        for faces in &piece_faces {
            for f in faces {
                if boundary.iter().any(|bf| bf.contains(f)) {
                    continue;
                }
                let count = piece_faces.iter().filter(|fs| fs.contains(f)).count();
                if count != 2 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
