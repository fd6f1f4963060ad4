//! Tropical (co)homology through cellular (co)sheaves of multi-tangent spaces.

pub mod multitangent;
pub mod sheaf;
pub mod engines;
pub mod betti;
pub mod degree;
pub mod io;

pub use betti::{betti_tables, compact_table, ordinary_table, BettiTable, Flavor};
pub use degree::{degree, fundamental_cycle_boundary, pd_report, unit_top_cochain, PdReport};
pub use engines::{compact_cohomology, ordinary_cohomology, CochainComplex};
pub use io::{load_cellsheaf, CellSheafFile};
pub use multitangent::{multitangent_space, MultiTangent};
pub use sheaf::{build_cosheaf, build_sheaf, CellularSheafDatum, Direction, Relation, SheafCell};
