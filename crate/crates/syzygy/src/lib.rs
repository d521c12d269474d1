//! Syzygies of canonical curves: quadric forms of K_{p,1} classes, syzygy
//! rank, the minimal-rank classes δ_s of pencils, and the span test.

pub mod delta;
pub mod error;
pub mod gsc;
pub mod quadric;
pub mod rank;

pub use delta::{
    min_rank_syzygy, pencil_class, pencil_class_in, quadric_support_within, residual_sections, scroll_quadrics,
    scroll_quadrics_of_pencil, PencilClass,
};
pub use error::SyzygyError;
pub use gsc::{gsc_span_test, GscOptions, GscReport, PencilSource};
pub use quadric::{check_linear, from_quadric_rep, linear_strand, sym2_product, to_quadric_rep, QuadricRep};
pub use rank::{gram_matrix, max_isotropic, rank_of_quadric_rep, syzygy_rank, RankCertificate, RankSummary};
