use syz_koszul::KoszulError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("field GF({modulus}) too small: need {needed} distinct affine coordinates")]
    FieldTooSmall { modulus: u32, needed: usize },
    #[error("node coordinates are not distinct")]
    CoincidentPoints,
    #[error("point {0} is a node coordinate")]
    PointAtNode(u32),
    #[error("marked points must be distinct")]
    EqualPoints,
    #[error("canonical space has dimension {found}, expected {expected}")]
    CanonicalDimension { found: usize, expected: usize },
    #[error("degree-{q} piece has dimension {found}, expected {expected}; curve is too special")]
    NotProjectivelyNormal { q: usize, found: usize, expected: usize },
    #[error("no acceptable curve after {0} attempts")]
    RetriesExhausted(usize),
    #[error("invalid curve spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}
