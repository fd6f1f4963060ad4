//! Exact computation of tropical (p,q)-cohomology of rational polyhedral complexes in tropical
//! affine space, together with Bergman fans of matroids, tropical modifications and integration
//! of superforms.

pub mod error;
pub mod linalg;
pub mod polyhedral;

pub use error::{Error, Result};
