//! Polynomial superforms, their differentials, and exact integration.

pub mod form;
pub mod integrate;
pub mod io;
pub mod poly;

pub use form::{AffineMap, Superform};
pub use integrate::{
    balanced_face_cancellation, boundary_integral, integrate_cell, integrate_complex, stokes_cell_residual,
    triangulate,
};
pub use io::{load_superform, superform_from_json, superform_from_str, superform_to_json};
pub use poly::Poly;
