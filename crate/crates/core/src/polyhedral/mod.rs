//! Rational polyhedra and polyhedral complexes in tropical affine space.

pub mod dd;
pub mod polyhedron;

pub use polyhedron::{AffineForm, Polyhedron};
pub mod complex;

pub use complex::{Cell, PolyhedralComplex};
pub mod balancing;

pub use balancing::{
    balancing_report, balancing_sum, incidence_sign, is_balanced, primitive_normal, BalancingFailure,
    BalancingReport,
};
pub mod io;

pub use io::{complex_from_json, complex_from_str, complex_to_json, load_complex};
pub mod ops;
