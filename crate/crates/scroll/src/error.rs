use syz_koszul::KoszulError;
use syz_syzygy::SyzygyError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScrollError {
    #[error("scroll needs f = Σe ≥ 2, got exponents {0:?}")]
    TooSmall(Vec<usize>),
    #[error("exponents must be non-increasing: {0:?}")]
    Unsorted(Vec<usize>),
    #[error("section count mismatch for aH − bR at (a, b) = ({a}, {b}): {combinatorial} vs {enumerated}")]
    SectionCount {
        a: usize,
        b: usize,
        combinatorial: usize,
        enumerated: usize,
    },
    #[error("K_{{{p},{q}}} has dimension {found}, expected {expected}")]
    Strand {
        p: usize,
        q: usize,
        found: usize,
        expected: usize,
    },
    #[error("last-strand law needs f ≥ 3")]
    LawNeedsThree,
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Syzygy(#[from] SyzygyError),
}
