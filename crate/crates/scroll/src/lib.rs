//! Rational normal scrolls as graded modules: section spaces, strand
//! dimensions and the classes of the ruling pencil.

pub mod error;
pub mod law;
pub mod scroll;
pub mod strand;

pub use error::ScrollError;
pub use law::{scroll_last_strand_law, LawReport};
pub use scroll::{build_scroll, ruling_multiple, section_basis, section_dim, ScrollData, Symbol};
pub use strand::{scroll_strand, strand_table, StrandRow};

/// Non-increasing exponent vectors with positive entries summing to f.
pub fn partitions(f: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=left.min(max)).rev() {
            cur.push(x);
            rec(left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(f, f, &mut Vec::new(), &mut out);
    out
}
