use syz_curve::CurveError;
use syz_koszul::KoszulError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("component α₄ ∈ ∧^{{p-1}}V_C ∧ s ⊗ s is nonzero")]
    Alpha4Nonzero,
    #[error("node evaluation is not normalized: ev(s) = {0}")]
    Normalization(u32),
    #[error("projection modes disagree as classes")]
    ModesDisagree,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("no usable point pair after {0} draws")]
    NoPair(usize),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
