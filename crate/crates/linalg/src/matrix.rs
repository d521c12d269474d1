//! Dense row-major matrices over a finite field.

use crate::error::LinalgError;
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub rows: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Rows of length `cols` (needed to fix the width of an empty matrix).
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Self {
            field,
            rows: r,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn push_row(&mut self, row: &[F::Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if self.field.is_zero(&a) {
                    continue;
                }
                let (f, oc) = (&self.field, other.cols);
                f.axpy(&mut out.data[i * oc..(i + 1) * oc], &a, other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vstack {} vs {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "hstack {} vs {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        Ok(Self::from_fn(self.field.clone(), self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(self.field.clone(), self.cols, rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field.clone(), self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    /// Gauss–Jordan elimination in place, choosing pivots only among the first
    /// `pivot_cols` columns. Returns the pivot columns; rows are reordered so that
    /// row i carries pivot i, and rows past the rank are zero on the pivot range.
    fn eliminate(&mut self, pivot_cols: usize, reduce_above: bool) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..pivot_cols.min(cols) {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| !f.is_zero(&self.data[r * cols + c])) else {
                continue;
            };
            if piv != rank {
                for j in c..cols {
                    self.data.swap(piv * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(&self.data[rank * cols + c]).unwrap();
            f.scale(&mut self.data[rank * cols + c..(rank + 1) * cols], &inv);
            let start = if reduce_above { 0 } else { rank + 1 };
            let (head, tail) = self.data.split_at_mut(rank * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            let prow = &prow[c..];
            for r in start..self.rows {
                if r == rank {
                    continue;
                }
                let row = if r < rank {
                    &mut head[r * cols..(r + 1) * cols]
                } else {
                    let o = (r - rank - 1) * cols;
                    &mut rest[o..o + cols]
                };
                let e = row[c].clone();
                if f.is_zero(&e) {
                    continue;
                }
                f.axpy(&mut row[c..], &f.neg(&e), prow);
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let pivots = m.eliminate(m.cols, true);
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        Echelon { rows: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(m.cols, false).len()
    }

    /// Rank and a kernel basis in reduced echelon form: one vector per free column,
    /// with a 1 in that column and zeros in every other free column.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<F::Elem>>) {
        let e = self.rref();
        let kernel = e.kernel_from_rref();
        debug_assert_eq!(e.pivots.len() + kernel.len(), self.cols, "rank-nullity");
        (e.pivots.len(), kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        self.rank_kernel().1
    }

    /// Basis of the row space in reduced echelon form.
    pub fn rowspace(&self) -> Self {
        self.rref().rows
    }

    /// Basis of rowspace(a) ∩ rowspace(b).
    pub fn intersect_rowspaces(a: &Self, b: &Self) -> Result<Self, LinalgError> {
        if a.cols != b.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} vs {} columns",
                a.cols, b.cols
            )));
        }
        let ra = a.rowspace();
        let rb = b.rowspace();
        let stacked = ra.vstack(&rb)?;
        // (x, y) with x·ra + y·rb = 0 gives x·ra in the intersection
        let left = stacked.transpose().kernel();
        let mut out = Self::zeros(a.field.clone(), 0, a.cols);
        for v in &left {
            out.push_row(&ra.vec_mul(&v[..ra.rows]));
        }
        let meet = out.rowspace();
        debug_assert_eq!(
            ra.rows + rb.rows,
            stacked.rank() + meet.rows,
            "dim(a) + dim(b) = dim(a + b) + dim(a ∩ b)"
        );
        Ok(meet)
    }

    /// Some x with self·x = b.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Vec<F::Elem>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "rhs length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Self::from_fn(self.field.clone(), self.rows, 1, |i, _| b[i].clone());
        let mut aug = self.hstack(&rhs)?;
        let pivots = aug.eliminate(self.cols, true);
        let f = &self.field;
        for r in pivots.len()..aug.rows {
            if !f.is_zero(aug.get(r, self.cols)) {
                return Err(LinalgError::Inconsistent);
            }
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(i, self.cols).clone();
        }
        Ok(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(self.field.clone(), n)).ok()?;
        if aug.eliminate(n, true).len() < n {
            return None;
        }
        Some(aug.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn kernel_from_rref(&self) -> Vec<Vec<F::Elem>> {
        let f = self.rows.field();
        let n = self.rows.cols();
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); n];
                v[free] = f.one();
                for (i, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = f.neg(self.rows.get(i, free));
                }
                v
            })
            .collect()
    }

    /// v minus its projection onto the row space along the pivot coordinates.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.rows.field();
        let mut out = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let e = out[c].clone();
            if !f.is_zero(&e) {
                f.axpy(&mut out, &f.neg(&e), self.rows.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.rows.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }
}

/// Coordinates of vectors with respect to a fixed list of spanning rows.
#[derive(Clone, Debug)]
pub struct SubspaceSolver<F: Field> {
    len: usize,
    ech: Echelon<F>,
    // transform rows: ech.rows[i] = transform[i] · basis
    transform: Matrix<F>,
}

impl<F: Field> SubspaceSolver<F> {
    pub fn new(basis: &Matrix<F>) -> Self {
        let k = basis.rows();
        let n = basis.cols();
        let mut aug = basis.hstack(&Matrix::identity(basis.field().clone(), k)).unwrap();
        let pivots = aug.eliminate(n, true);
        let r = pivots.len();
        let rows = aug.select_rows(&(0..r).collect::<Vec<_>>());
        let ech_rows = rows.select_cols(&(0..n).collect::<Vec<_>>());
        let transform = rows.select_cols(&(n..n + k).collect::<Vec<_>>());
        Self {
            len: k,
            ech: Echelon { rows: ech_rows, pivots },
            transform,
        }
    }

    /// Dimension of the spanned subspace.
    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    /// Number of spanning rows given at construction.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.ech.contains(v)
    }

    pub fn echelon(&self) -> &Echelon<F> {
        &self.ech
    }

    /// c with c · basis = v, or None if v is outside the span.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        let f = self.ech.rows.field();
        let mut c = vec![f.zero(); self.len];
        for (i, &p) in self.ech.pivots.iter().enumerate() {
            f.axpy(&mut c, &v[p], self.transform.row(i));
        }
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let f = gf(7);
        let (r, k) = Matrix::identity(f, 3).rank_kernel();
        assert_eq!((r, k.len()), (3, 0));
        let (r, k) = Matrix::zeros(f, 2, 5).rank_kernel();
        assert_eq!((r, k.len()), (0, 5));
        let (r, k) = Matrix::zeros(f, 0, 0).rank_kernel();
        assert_eq!((r, k.len()), (0, 0));
    }

    #[test]
    fn kernel_is_reduced_echelon() {
        let f = gf(11);
        let m = Matrix::from_rows(f, 4, vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 0, 1, 5]]);
        let (r, ker) = m.rank_kernel();
        assert_eq!(r, 2);
        // free columns 1 and 3
        assert_eq!(ker.len(), 2);
        assert_eq!((ker[0][1], ker[0][3]), (1, 0));
        assert_eq!((ker[1][1], ker[1][3]), (0, 1));
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn complementary_coordinate_subspaces_meet_trivially() {
        let f = gf(5);
        let a = Matrix::from_rows(f, 4, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = Matrix::from_rows(f, 4, vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(Matrix::intersect_rowspaces(&a, &b).unwrap().rows(), 0);
        assert_eq!(Matrix::intersect_rowspaces(&a, &a).unwrap().rows(), 2);
        let c = Matrix::zeros(f, 1, 3);
        assert!(Matrix::intersect_rowspaces(&a, &c).is_err());
    }

    #[test]
    fn solve_and_coordinates() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Matrix::from_fn(f, 6, 9, |_, _| f.random(&mut rng));
        let x: Vec<u32> = (0..9).map(|_| f.random(&mut rng)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&y), b);
        let s = SubspaceSolver::new(&m);
        let c: Vec<u32> = (0..6).map(|_| f.random(&mut rng)).collect();
        let v = m.vec_mul(&c);
        assert_eq!(s.coords(&v).unwrap(), c);
        let inv = Matrix::from_fn(f, 5, 5, |_, _| f.random(&mut rng)).inverse().unwrap();
        assert!(inv.inverse().unwrap().mul(&inv).unwrap() == Matrix::identity(f, 5));
    }
}
