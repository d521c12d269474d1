use crate::field::Field;
use crate::matrix::Matrix;

/// Order-3 tensor with entries indexed (i, j, k), stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<F: Field> {
    field: F,
    dims: (usize, usize, usize),
    data: Vec<F::Elem>,
}

impl<F: Field> Tensor3<F> {
    pub fn zeros(field: F, dims: (usize, usize, usize)) -> Self {
        let data = vec![field.zero(); dims.0 * dims.1 * dims.2];
        Self { field, dims, data }
    }

    pub fn from_fn(field: F, dims: (usize, usize, usize), mut f: impl FnMut(usize, usize, usize) -> F::Elem) -> Self {
        let mut t = Self::zeros(field, dims);
        for i in 0..dims.0 {
            for j in 0..dims.1 {
                for k in 0..dims.2 {
                    let v = f(i, j, k);
                    t.set(i, j, k, v);
                }
            }
        }
        t
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.data[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: F::Elem) {
        let at = self.idx(i, j, k);
        self.data[at] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, v: &F::Elem) {
        let at = self.idx(i, j, k);
        self.data[at] = self.field.add(&self.data[at], v);
    }

    /// The k-slice over fixed (i, j).
    pub fn fiber(&self, i: usize, j: usize) -> &[F::Elem] {
        let at = self.idx(i, j, 0);
        &self.data[at..at + self.dims.2]
    }

    /// t += u ⊗ v ⊗ w
    pub fn add_pure(&mut self, u: &[F::Elem], v: &[F::Elem], w: &[F::Elem]) {
        assert_eq!((u.len(), v.len(), w.len()), self.dims);
        let f = self.field.clone();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let c = f.mul(ui, vj);
                let at = self.idx(i, j, 0);
                f.axpy(&mut self.data[at..at + w.len()], &c, w);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Matrix with rows indexed by (i, k) and columns by j.
    pub fn flatten_middle(&self) -> Matrix<F> {
        let (a, b, c) = self.dims;
        Matrix::from_fn(self.field.clone(), a * c, b, |r, j| self.get(r / c, j, r % c).clone())
    }

    /// Dimension of the smallest W with t ∈ A ⊗ W ⊗ B.
    pub fn flatten_rank(&self) -> usize {
        self.flatten_middle().rank()
    }

    /// Basis of the smallest such W.
    pub fn middle_support(&self) -> Matrix<F> {
        self.flatten_middle().rowspace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn pure_and_zero_tensors() {
        let f = PrimeField::new(7).unwrap();
        let mut t = Tensor3::zeros(f, (2, 3, 2));
        assert_eq!(t.flatten_rank(), 0);
        t.add_pure(&[1, 2], &[0, 3, 1], &[4, 5]);
        assert_eq!(t.flatten_rank(), 1);
        assert_eq!(t.middle_support().row(0), &[0, 1, 5]);
        let m = t.flatten_middle();
        assert_eq!((m.rows(), m.cols()), (4, 3));
    }
}
