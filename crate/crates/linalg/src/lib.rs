//! Exact linear algebra over finite fields.
//!
//! Every homological computation in the workspace reduces to ranks and
//! kernels of dense matrices over GF(p) or a small extension GF(p^n).

pub mod error;
pub mod field;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod tensor;

pub use error::LinalgError;
pub use field::{next_prime, ExtensionField, Field, PrimeField};
pub use matrix::{Echelon, Matrix, SubspaceSolver};
pub use par::{par_map, par_range, Execution};
pub use tensor::Tensor3;

pub type PFMatrix = Matrix<PrimeField>;

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Determinant of a square matrix by elimination.
pub fn determinant<F: Field>(m: &Matrix<F>) -> F::Elem {
    assert_eq!(m.rows(), m.cols());
    let f = m.field().clone();
    let n = m.rows();
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !f.is_zero(a.get(r, c))) else {
            return f.zero();
        };
        if piv != c {
            for j in 0..n {
                let (x, y) = (a.get(piv, j).clone(), a.get(c, j).clone());
                a.set(piv, j, y);
                a.set(c, j, x);
            }
            det = f.neg(&det);
        }
        let pv = a.get(c, c).clone();
        det = f.mul(&det, &pv);
        let inv = f.inv(&pv).unwrap();
        let prow: Vec<F::Elem> = a.row(c).to_vec();
        for r in (c + 1)..n {
            let e = a.get(r, c).clone();
            if f.is_zero(&e) {
                continue;
            }
            let factor = f.neg(&f.mul(&e, &inv));
            f.axpy(a.row_mut(r), &factor, &prow);
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn determinant_of_vandermonde() {
        let f = PrimeField::new(101).unwrap();
        let xs = [2u32, 3, 7];
        let m = Matrix::from_fn(f, 3, 3, |i, j| f.pow(&xs[i], j as u128));
        // (3-2)(7-2)(7-3) = 20
        assert_eq!(determinant(&m), 20);
    }
}
