//! Strand dimensions of scrolls: dim K_{p,1} = p·C(f, p+1) and K_{p,2} = 0.

use serde::Serialize;
use syz_koszul::koszul_cohomology_with;
use syz_linalg::{binomial, Execution, Field};

use crate::error::ScrollError;
use crate::scroll::ScrollData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandRow {
    pub p: usize,
    pub k_p1: usize,
    pub k_p2: usize,
    pub expected_p1: usize,
}

/// dim K_{p,1}, asserted equal to p·C(f, p+1), with K_{p,2} = 0 asserted too.
pub fn scroll_strand<F: Field>(s: &ScrollData<F>, p: usize, exec: Execution) -> Result<StrandRow, ScrollError> {
    let m = s.module();
    let k1 = koszul_cohomology_with(m, p, 1, exec)?.dim();
    let k2 = koszul_cohomology_with(m, p, 2, exec)?.dim();
    let expected = p * binomial(s.f(), p + 1);
    if k1 != expected {
        return Err(ScrollError::Strand {
            p,
            q: 1,
            found: k1,
            expected,
        });
    }
    if k2 != 0 {
        return Err(ScrollError::Strand {
            p,
            q: 2,
            found: k2,
            expected: 0,
        });
    }
    Ok(StrandRow {
        p,
        k_p1: k1,
        k_p2: k2,
        expected_p1: expected,
    })
}

/// Rows p = 1 … f of the strand table (K_{f,1} = 0 closes it).
pub fn strand_table<F: Field>(s: &ScrollData<F>, exec: Execution) -> Result<Vec<StrandRow>, ScrollError> {
    (1..=s.f()).map(|p| scroll_strand(s, p, exec)).collect()
}
