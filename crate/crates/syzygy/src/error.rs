use syz_curve::CurveError;
use syz_koszul::KoszulError;
use syz_pencil::PencilError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyzygyError {
    #[error("zero class has no rank")]
    ZeroClass,
    #[error("p = {0} < 2: use the symmetric-rank path")]
    UseSymmetricRank(usize),
    #[error("degree-1 piece does not match V: {0}")]
    NotLinear(String),
    #[error("member divisor meets a node or is not reduced; resample the member")]
    DegenerateDivisor,
    #[error("W_s has dimension {found}, expected {expected}")]
    WrongResidualDimension { found: usize, expected: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
