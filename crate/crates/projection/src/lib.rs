//! Projection of K_{p,1} from a curve D with one extra node to its partial
//! normalization C, the twisted image γ_{x,y} and the exact-sequence audit.

pub mod audit;
pub mod check;
pub mod context;
pub mod error;
pub mod project;

pub use audit::{gamma_map, gamma_span, include_chain, les_audit, GammaMap, LesAudit};
pub use check::{consistency_check, random_cycle, ConsistencyReport};
pub use context::{ContextSummary, ProjectionContext};
pub use error::ProjectionError;
pub use project::{contract, decompose, project_class, Decomposition, Mode};
