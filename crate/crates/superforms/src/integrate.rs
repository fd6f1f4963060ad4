//! Lattice-normalized integration of superforms over rational polytopes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::lattice::lattice_quotient_primitive;
use tropcoh_core::linalg::rational::{factorial, int_to_rat, ints_to_rats, sub_vec, Rational};
use tropcoh_core::linalg::RationalMatrix;
use tropcoh_core::polyhedral::{balancing_sum, AffineForm, Polyhedron, PolyhedralComplex};

use super::form::{AffineMap, Superform};
use super::poly::Poly;

/// `y ↦ v_0 + Σ y_j u_j` with `u_j` the lattice basis of `Z(σ)`.
pub fn lattice_parametrization(sigma: &Polyhedron) -> AffineMap {
    let r = sigma.ambient_dim();
    let basis = sigma.lattice().basis();
    let n = basis.len();
    let mut linear = RationalMatrix::zeros(r, n);
    for (j, u) in basis.iter().enumerate() {
        for i in 0..r {
            linear.set(i, j, int_to_rat(&u[i]));
        }
    }
    AffineMap {
        linear,
        translation: sigma.vertices()[0].clone(),
    }
}

/// Pulling triangulation: cone the lexicographically smallest vertex over triangulations of the
/// facets that avoid it.
pub fn triangulate(p: &Polyhedron) -> Vec<Vec<Vec<Rational>>> {
    let d = p.dim();
    let apex = p.vertices().iter().min().expect("a polytope has vertices").clone();
    if d == 0 {
        return vec![vec![apex]];
    }
    let mut out = Vec::new();
    for f in p.faces() {
        if f.dim() + 1 != d || f.contains_point(&apex) {
            continue;
        }
        for mut s in triangulate(&f) {
            s.insert(0, apex.clone());
            out.push(s);
        }
    }
    out
}

/// `∫_Δ f` over a full-dimensional simplex in `R^n`, Lebesgue measure.
pub fn integrate_simplex(f: &Poly, vertices: &[Vec<Rational>]) -> Result<Rational> {
    let n = f.nvars();
    if vertices.len() != n + 1 {
        return Err(Error::Dimension("a simplex in R^n needs n + 1 vertices".into()));
    }
    let w0 = &vertices[0];
    let mut w = RationalMatrix::zeros(n, n);
    for (j, v) in vertices[1..].iter().enumerate() {
        let d = sub_vec(v, w0);
        for i in 0..n {
            w.set(i, j, d[i].clone());
        }
    }
    let det = w.determinant()?.abs();
    if det.is_zero() {
        return Ok(Rational::zero());
    }
    let g = f.compose_affine(&w, w0);
    let mut total = Rational::zero();
    for (e, c) in g.terms() {
        let num = e.iter().fold(BigInt::from(1), |acc, &k| acc * factorial(k as usize));
        let deg: usize = e.iter().map(|&k| k as usize).sum();
        total += c * Rational::new(num, factorial(deg + n));
    }
    Ok(total * det)
}

/// `∫_σ α` for an `(n,n)`-form over a bounded `n`-dimensional cell, measured against `Z(σ)`.
pub fn integrate_cell(alpha: &Superform, sigma: &Polyhedron) -> Result<Rational> {
    let n = sigma.dim();
    if alpha.bidegree() != (n, n) {
        return Err(Error::Degree(format!(
            "integrating a {:?}-form over a cell of dimension {n}",
            alpha.bidegree()
        )));
    }
    if alpha.ambient_dim() != sigma.ambient_dim() {
        return Err(Error::Dimension("form and cell live in different spaces".into()));
    }
    if !sigma.sedentarity().is_empty() {
        return Err(Error::Validation("integration is only defined on mobile cells".into()));
    }
    if !sigma.is_bounded() {
        return Err(Error::UnboundedDomain("the cell has rays or lineality".into()));
    }
    if n == 0 {
        return Ok(alpha.coefficient(&[], &[]).eval(&sigma.vertices()[0]));
    }
    let param = lattice_parametrization(sigma);
    let pulled = alpha.pullback(&param)?;
    let idx: Vec<usize> = (0..n).collect();
    // d'y_1 ∧ d''y_1 ∧ ... ∧ d'y_n ∧ d''y_n = (-1)^{n(n-1)/2} d'y_{1..n} ∧ d''y_{1..n}
    let mut f = pulled.coefficient(&idx, &idx);
    if (n * (n - 1) / 2) % 2 == 1 {
        f = f.scale(&Rational::from_integer((-1).into()));
    }
    let rows: Vec<Vec<Rational>> = sigma.lattice().basis().iter().map(|u| ints_to_rats(u)).collect();
    let u = RationalMatrix::from_rows(sigma.ambient_dim(), &rows)?;
    let pre: Vec<Vec<Rational>> = sigma
        .vertices()
        .iter()
        .map(|v| {
            u.solve_left(&sub_vec(v, &param.translation))
                .ok_or_else(|| Error::InternalConsistency("vertex outside the affine hull".into()))
        })
        .collect::<Result<_>>()?;
    let domain = Polyhedron::from_generators(n, &[], &pre, &[], &[])?;
    let mut total = Rational::zero();
    for s in triangulate(&domain) {
        total += integrate_simplex(&f, &s)?;
    }
    Ok(total)
}

/// Contraction used on boundary faces. The vector goes into the first `d'` slot, which differs
/// from the last slot by `(-1)^{n-1}`; with the last slot the cell identity below fails in even
/// dimension.
pub fn boundary_contraction(beta: &Superform, v: &[Rational]) -> Result<Superform> {
    beta.contract(v, 1)
}

/// `Σ_τ ∫_τ ⟨β; ν_{τ,σ}⟩` over the codimension-one faces of `σ`.
pub fn boundary_integral(beta: &Superform, sigma: &Polyhedron) -> Result<Rational> {
    let n = sigma.dim();
    if n == 0 || beta.bidegree() != (n, n - 1) {
        return Err(Error::Degree(format!(
            "boundary integral of a {:?}-form over a cell of dimension {n}",
            beta.bidegree()
        )));
    }
    if !sigma.is_bounded() {
        return Err(Error::UnboundedDomain("the cell has rays or lineality".into()));
    }
    let inner = sigma.relative_interior_point();
    let mut total = Rational::zero();
    for tau in sigma.faces() {
        if tau.dim() + 1 != n {
            continue;
        }
        let witness = sub_vec(&inner, &tau.relative_interior_point());
        let nu = lattice_quotient_primitive(sigma.lattice(), tau.lattice(), &witness)?;
        let gamma = boundary_contraction(beta, &ints_to_rats(&nu))?;
        total += integrate_cell(&gamma, &tau)?;
    }
    Ok(total)
}

/// `∫_σ d''β - ∫_{∂σ} β`.
pub fn stokes_cell_residual(beta: &Superform, sigma: &Polyhedron) -> Result<Rational> {
    Ok(integrate_cell(&beta.d_second(), sigma)? - boundary_integral(beta, sigma)?)
}

/// Inequalities `lo_i <= x_i <= hi_i`.
pub fn box_forms(bounds: &[(Rational, Rational)]) -> Vec<AffineForm> {
    let r = bounds.len();
    let mut out = Vec::new();
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        let mut e = vec![Rational::zero(); r];
        e[i] = Rational::from_integer(1.into());
        out.push(AffineForm::from_rational(&e, &-lo.clone()));
        e[i] = Rational::from_integer((-1).into());
        out.push(AffineForm::from_rational(&e, hi));
    }
    out
}

/// The part of a cell inside a box, if it keeps the cell's dimension.
pub fn truncate(sigma: &Polyhedron, bounds: &[(Rational, Rational)]) -> Result<Option<Polyhedron>> {
    if bounds.len() != sigma.ambient_dim() {
        return Err(Error::Dimension("box of the wrong dimension".into()));
    }
    Ok(sigma.cut(&[], &box_forms(bounds))?.filter(|q| q.dim() == sigma.dim()))
}

/// For each mobile codimension-one cell `τ` meeting the box in full dimension, the value
/// `∫_{τ ∩ box} ⟨β; Σ_σ m_σ ν_{τ,σ}⟩`.
pub fn balanced_face_cancellation(
    c: &PolyhedralComplex,
    beta: &Superform,
    bounds: &[(Rational, Rational)],
) -> Result<BTreeMap<usize, Rational>> {
    c.require_pure()?;
    let n = c.dim();
    if n == 0 || beta.bidegree() != (n, n - 1) {
        return Err(Error::Degree(format!(
            "face cancellation needs an ({n}, {})-form",
            n.saturating_sub(1)
        )));
    }
    let mut out = BTreeMap::new();
    for tau in c.cells_of_dim(n - 1) {
        let cell = c.cell(tau);
        if !cell.sedentarity().is_empty() {
            continue;
        }
        let Some(piece) = truncate(&cell.polyhedron, bounds)? else { continue };
        let net = balancing_sum(c, tau)?;
        let gamma = boundary_contraction(beta, &ints_to_rats(&net))?;
        out.insert(tau, integrate_cell(&gamma, &piece)?);
    }
    Ok(out)
}

/// `Σ_σ m_σ ∫_{σ ∩ box} α` over the mobile facets.
pub fn integrate_complex(
    c: &PolyhedralComplex,
    alpha: &Superform,
    bounds: &[(Rational, Rational)],
) -> Result<Rational> {
    let mut total = Rational::zero();
    for s in c.facets() {
        let cell = c.cell(s);
        if !cell.sedentarity().is_empty() {
            continue;
        }
        if let Some(piece) = truncate(&cell.polyhedron, bounds)? {
            let m = int_to_rat(c.weight(s).expect("facets are weighted"));
            total += m * integrate_cell(alpha, &piece)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropcoh_core::linalg::rational::{rat, rat_frac, rats};

    fn segment(a: &[i64], b: &[i64]) -> Polyhedron {
        Polyhedron::from_generators(a.len(), &[], &[rats(a), rats(b)], &[], &[]).unwrap()
    }

    fn top(n: usize, f: Poly) -> Superform {
        let idx: Vec<usize> = (0..n).collect();
        Superform::term(n, &idx, &idx, f).unwrap()
    }

    #[test]
    fn unit_segment() {
        assert_eq!(integrate_cell(&top(1, Poly::one(1)), &segment(&[0], &[1])).unwrap(), rat(1));
        assert_eq!(integrate_cell(&top(1, Poly::var(1, 0)), &segment(&[0], &[1])).unwrap(), rat_frac(1, 2));
    }

    #[test]
    fn diagonal_segment_has_lattice_length_one() {
        // on the diagonal d'x_1 = d'u, so d'x_1 ∧ d''x_1 integrates to the lattice length
        let a = Superform::term(2, &[0], &[0], Poly::one(2)).unwrap();
        assert_eq!(integrate_cell(&a, &segment(&[0, 0], &[1, 1])).unwrap(), rat(1));
    }

    #[test]
    fn segment_boundary() {
        let beta = Superform::term(1, &[0], &[], Poly::var(1, 0)).unwrap();
        let s = segment(&[0], &[1]);
        assert_eq!(boundary_integral(&beta, &s).unwrap(), rat(-1));
        assert_eq!(integrate_cell(&beta.d_second(), &s).unwrap(), rat(-1));
        assert_eq!(stokes_cell_residual(&beta, &s).unwrap(), rat(0));
        let c = Superform::term(1, &[0], &[], Poly::one(1)).unwrap();
        assert_eq!(boundary_integral(&c, &segment(&[-1], &[1])).unwrap(), rat(0));
    }

    #[test]
    fn unit_square() {
        let sq = Polyhedron::from_generators(
            2,
            &[],
            &[rats(&[0, 0]), rats(&[1, 0]), rats(&[0, 1]), rats(&[1, 1])],
            &[],
            &[],
        )
        .unwrap();
        assert_eq!(triangulate(&sq).len(), 2);
        let mut xy = Poly::zero(2);
        xy.add_term(vec![1, 1], rat(1));
        // d'x∧d''x∧d'y∧d''y = -d'x∧d'y∧d''x∧d''y
        let a = top(2, xy.scale(&rat(-1)));
        assert_eq!(integrate_cell(&a, &sq).unwrap(), rat_frac(1, 4));
        let mut x2y = Poly::zero(2);
        x2y.add_term(vec![2, 1], rat(1));
        let beta = Superform::term(2, &[0, 1], &[0], x2y).unwrap();
        assert_eq!(stokes_cell_residual(&beta, &sq).unwrap(), rat(0));
    }

    #[test]
    fn unbounded_cells_are_rejected() {
        let ray = Polyhedron::from_generators(1, &[], &[rats(&[0])], &[tropcoh_core::linalg::rational::ints(&[1])], &[]).unwrap();
        assert_eq!(integrate_cell(&top(1, Poly::one(1)), &ray).unwrap_err().kind(), "UnboundedDomainError");
    }
}

#[cfg(test)]
mod simplex_tests {
    use super::*;
    use tropcoh_core::linalg::rational::rat;

    #[test]
    fn monomial_boundaries_on_standard_simplices() {
        for n in 1..=3usize {
            let mut verts = vec![vec![rat(0); n]];
            for i in 0..n {
                let mut v = vec![rat(0); n];
                v[i] = rat(1);
                verts.push(v);
            }
            let s = Polyhedron::from_generators(n, &[], &verts, &[], &[]).unwrap();
            let k: Vec<usize> = (0..n).collect();
            for j in 0..n {
                let l: Vec<usize> = (0..n).filter(|&i| i != j).collect();
                let mut f = Poly::zero(n);
                let mut e = vec![0u32; n];
                e[j] = 2;
                f.add_term(e, rat(1));
                let b = Superform::term(n, &k, &l, f).unwrap();
                assert_eq!(stokes_cell_residual(&b, &s).unwrap(), rat(0), "n = {n}, j = {j}");
            }
        }
    }
}
