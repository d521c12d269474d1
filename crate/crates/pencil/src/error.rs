use syz_curve::CurveError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PencilError {
    #[error("pencil polynomials are proportional or zero")]
    Degenerate,
    #[error("u and v share a factor (base point)")]
    BasePoint,
    #[error("node condition fails at pair {0}")]
    NodeCondition(usize),
    #[error("member (0:0) is not a point of the pencil")]
    ZeroMember,
    #[error("degree {d} out of range for exhaustive search (genus {g})")]
    DegreeOutOfRange { d: usize, g: usize },
    #[error("closure computation failed: {0}")]
    Closure(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
