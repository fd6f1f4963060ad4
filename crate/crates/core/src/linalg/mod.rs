//! Exact linear algebra over Q and Z.

pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod sparse;
pub mod subspace;
pub mod wedge;

pub use lattice::{
    hermite_normal_form, integer_kernel, integer_solution, lattice_index, lattice_quotient_primitive,
    smith_normal_form, IntMatrix, Lattice, SmithForm,
};
pub use matrix::{RankKernelImage, RationalMatrix};
pub use rational::Rational;
pub use sparse::SparseMatrix;
pub use subspace::Subspace;
pub use wedge::{compound_matrix, wedge_power, WedgeBasis};
