//! Brill–Noether searches on nodal rational curves: pencils of degree d,
//! gonality, member divisors, and the count of W^1_{k+1} over the closure.

pub mod closure;
pub mod error;
pub mod pencil;
pub mod search;

pub use closure::{closure_count, ClosureCount, ClosureSummary, PencilOrbit};
pub use error::PencilError;
pub use pencil::{embedded_pairs, member_is_general, node_defect, node_matrix, pencil_divisor, Pencil, PencilDivisor};
pub use search::{
    find_pencils, gonality, sample_pencils, solution_dim, verify, Gonality, PencilRecord, PencilSearch, SearchOptions,
};

/// Number of pencils of minimal degree k+1 on a general curve of genus 2k.
pub fn catalan(k: usize) -> usize {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c as usize
}
