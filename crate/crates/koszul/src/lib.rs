//! Graded modules over Sym(V), Koszul differentials and cohomology,
//! restriction to subspaces W ⊆ V, submodules and quotients.

pub mod complex;
pub mod error;
pub mod exterior;
pub mod module;
pub mod symmetric;

pub use complex::{
    apply_differential, chain_len, koszul_cohomology, koszul_cohomology_with, koszul_differential,
    restricted_chain_map, restricted_cohomology, restricted_inclusion, weight_blocks, KoszulClass, KoszulGroup,
    KoszulPosition, Repr,
};
pub use error::KoszulError;
pub use exterior::{wedge_index, wedge_of_vectors, wedge_power, WedgeBasis};
pub use module::{GradedModule, Weights};
pub use symmetric::{symmetric_algebra, SymBasis};
