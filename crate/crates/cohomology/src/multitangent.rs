//! Multi-tangent spaces `F_p` and the maps between them.

use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::rational::Rational;
use tropcoh_core::linalg::wedge::{project_wedge, wedge_power, WedgeBasis};
use tropcoh_core::linalg::{RationalMatrix, Subspace};
use tropcoh_core::polyhedral::PolyhedralComplex;

/// `F_p(sigma)`: the sum of `⋀^p L(tau)` over same-sedentarity cofaces, as a subspace of
/// `⋀^p Q^r` in subset coordinates.
pub fn multitangent_space(c: &PolyhedralComplex, sigma: usize, p: usize) -> Subspace {
    let basis = WedgeBasis::new(c.ambient_dim(), p);
    let mut parts = Vec::new();
    for t in c.same_sedentarity_cofaces(sigma) {
        parts.push(wedge_power(c.cell(t).polyhedron.tangent(), p));
    }
    let refs: Vec<&Subspace> = parts.iter().collect();
    let n = if p == 0 { 1 } else { basis.len() };
    Subspace::sum(n, &refs).expect("common ambient space")
}

/// All multi-tangent spaces of a complex for one `p`.
#[derive(Clone, Debug)]
pub struct MultiTangent {
    pub p: usize,
    pub basis: WedgeBasis,
    pub spaces: Vec<Subspace>,
}

impl MultiTangent {
    pub fn new(c: &PolyhedralComplex, p: usize) -> Self {
        MultiTangent {
            p,
            basis: WedgeBasis::new(c.ambient_dim(), p),
            spaces: (0..c.len()).map(|s| multitangent_space(c, s, p)).collect(),
        }
    }

    /// Matrix of `F_p(sigma) -> F_p(tau)` in echelon coordinates, for `tau` a face of `sigma`.
    pub fn inclusion_map(&self, c: &PolyhedralComplex, tau: usize, sigma: usize) -> Result<RationalMatrix> {
        if !c.is_face(tau, sigma) {
            return Err(Error::Codimension(format!(
                "{} is not a face of {}",
                c.describe_cell(tau),
                c.describe_cell(sigma)
            )));
        }
        let (ft, fs) = (&self.spaces[tau], &self.spaces[sigma]);
        let killed: Vec<usize> = c
            .cell(tau)
            .sedentarity()
            .iter()
            .copied()
            .filter(|i| !c.cell(sigma).sedentarity().contains(i))
            .collect();
        let mut m = RationalMatrix::zeros(ft.dim(), fs.dim());
        for (j, b) in fs.basis().iter().enumerate() {
            let v: Vec<Rational> = if killed.is_empty() || self.p == 0 {
                b.clone()
            } else {
                project_wedge(b, &self.basis, &killed)?
            };
            let coords = ft.coordinates(&v).ok_or_else(|| {
                Error::InternalConsistency("multi-tangent space is not contained in its face's".into())
            })?;
            for (i, x) in coords.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }
}

pub fn inclusion_map(c: &PolyhedralComplex, tau: usize, sigma: usize, p: usize) -> Result<RationalMatrix> {
    MultiTangent::new(c, p).inclusion_map(c, tau, sigma)
}
