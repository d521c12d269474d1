use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("degree out of range: no multiplication data at q = {q}")]
    DegreeOutOfRange { q: usize },
    #[error("subspace not closed under multiplication by V at degree {q}")]
    ClosureViolation { q: usize },
    #[error("module not generated in degree 0: multiplication onto degree {q} fails")]
    NotNormallyGenerated { q: usize },
    #[error("action is not commutative at degree {q}")]
    NotCommutative { q: usize },
    #[error("inconsistent weights: {0}")]
    Weights(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("vector is not a Koszul cycle")]
    NotACycle,
}
