//! Dense exact matrices and subspaces in reduced row echelon form.

use crate::field::Field;

/// A dense `rows × cols` matrix stored as row vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Vector>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: (0..rows).map(|_| field.zeros(cols)).collect(),
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            field.set(&mut m.data[i], i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<F::Vector>) -> Self {
        debug_assert!(rows.iter().all(|r| field.dim(r) == cols));
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Build from column vectors of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[F::Vector]) -> Self {
        let mut m = Self::zero(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                let x = field.get(c, i);
                if !field.is_zero(&x) {
                    field.set(&mut m.data[i], j, x);
                }
            }
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, f: impl Fn(usize, usize) -> F::Elem) -> Self {
        let mut m = Self::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                if !field.is_zero(&x) {
                    field.set(&mut m.data[i], j, x);
                }
            }
        }
        m
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

    pub fn row(&self, i: usize) -> &F::Vector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[F::Vector] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        self.field.get(&self.data[i], j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: F::Elem) {
        self.field.set(&mut self.data[i], j, x);
    }

    pub fn column(&self, j: usize) -> F::Vector {
        let f = &self.field;
        let mut v = f.zeros(self.rows);
        for i in 0..self.rows {
            let x = f.get(&self.data[i], j);
            if !f.is_zero(&x) {
                f.set(&mut v, i, x);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| self.field.is_zero_vec(r))
    }

    /// `self · other`
    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            let row = &self.data[i];
            let mut k = 0;
            while k < self.cols {
                let a = f.get(row, k);
                if !f.is_zero(&a) {
                    f.axpy(&mut out.data[i], &a, &other.data[k]);
                }
                k += 1;
            }
        }
        out
    }

    /// `self · x` for a column vector `x`.
    pub fn apply(&self, x: &F::Vector) -> F::Vector {
        let f = &self.field;
        let mut y = f.zeros(self.rows);
        if f.is_zero_vec(x) {
            return y;
        }
        for i in 0..self.rows {
            let d = f.dot(&self.data[i], x);
            if !f.is_zero(&d) {
                f.set(&mut y, i, d);
            }
        }
        y
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        let one = self.field.one();
        for (r, o) in out.data.iter_mut().zip(other.data.iter()) {
            self.field.axpy(r, &one, o);
        }
        out
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        self.add(&other.scaled(&self.field.neg(&self.field.one())))
    }

    pub fn scaled(&self, a: &F::Elem) -> Matrix<F> {
        let mut out = self.clone();
        for r in out.data.iter_mut() {
            self.field.scale(r, a);
        }
        out
    }

    /// `self += a · other`
    pub fn axpy(&mut self, a: &F::Elem, other: &Matrix<F>) {
        for (r, o) in self.data.iter_mut().zip(other.data.iter()) {
            self.field.axpy(r, a, o);
        }
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_columns(&self.field, self.cols, &self.data)
    }

    /// Restrict to the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix<F> {
        Matrix::from_rows(&self.field, self.cols, rows.iter().map(|&i| self.data[i].clone()).collect())
    }

    /// Stack `[self; other]`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_rows(&self.field, self.cols, data)
    }

    /// Place `[self | other]` side by side.
    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| f.concat(a, b))
            .collect();
        Matrix::from_rows(f, self.cols + other.cols, data)
    }

    pub fn block_diag(&self, other: &Matrix<F>) -> Matrix<F> {
        let top = self.hstack(&Matrix::zero(&self.field, self.rows, other.cols));
        let bottom = Matrix::zero(&self.field, other.rows, self.cols).hstack(other);
        top.vstack(&bottom)
    }

    /// Reduced row echelon form; returns the nonzero rows and the pivot columns.
    pub fn rref(&self) -> (Vec<F::Vector>, Vec<usize>) {
        rref_rows(&self.field, self.cols, self.data.clone())
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right null space `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<F::Vector> {
        let f = &self.field;
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut x = f.unit(self.cols, free);
            for (r, &p) in rows.iter().zip(pivots.iter()) {
                let c = f.get(r, free);
                if !f.is_zero(&c) {
                    f.set(&mut x, p, f.neg(&c));
                }
            }
            basis.push(x);
        }
        basis
    }

    /// A basis of the column space, as vectors of length `rows`.
    pub fn image(&self) -> Vec<F::Vector> {
        self.transpose().rref().0
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n));
        let (rows, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let f = &self.field;
        Some(Matrix::from_rows(
            f,
            n,
            rows.iter().take(n).map(|r| f.slice(r, n, n)).collect(),
        ))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Solve `self · x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &F::Vector) -> Option<F::Vector> {
        let f = &self.field;
        let bm = Matrix::from_columns(f, self.rows, std::slice::from_ref(b));
        let aug = self.hstack(&bm);
        let (rows, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = f.zeros(self.cols);
        for (r, &p) in rows.iter().zip(pivots.iter()) {
            let c = f.get(r, self.cols);
            if !f.is_zero(&c) {
                f.set(&mut x, p, c);
            }
        }
        Some(x)
    }
}

/// Gauss-Jordan elimination on a list of rows of length `cols`.
pub fn rref_rows<F: Field>(f: &F, cols: usize, mut rows: Vec<F::Vector>) -> (Vec<F::Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(pr) = (rank..rows.len()).find(|&i| !f.is_zero(&f.get(&rows[i], col))) else {
            continue;
        };
        rows.swap(rank, pr);
        let lead = f.get(&rows[rank], col);
        if lead != f.one() {
            let inv = f.inv(&lead);
            f.scale(&mut rows[rank], &inv);
        }
        let pivot_row = rows[rank].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i == rank {
                continue;
            }
            let c = f.get(r, col);
            if !f.is_zero(&c) {
                f.axpy(r, &f.neg(&c), &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// A subspace of `F^n` held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<F::Vector>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows: (0..ambient).map(|i| field.unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &F, ambient: usize, vectors: Vec<F::Vector>) -> Self {
        let (rows, pivots) = rref_rows(field, ambient, vectors);
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    /// Trust that `rows` is already in reduced row echelon form.
    pub fn from_rref(field: &F, ambient: usize, rows: Vec<F::Vector>, pivots: Vec<usize>) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[F::Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.ambient).filter(|&j| !used[j]).collect()
    }

    /// Reduce `v` modulo the subspace (zero on every pivot column).
    pub fn reduce(&self, v: &F::Vector) -> F::Vector {
        let f = &self.field;
        let mut out = v.clone();
        for (r, &p) in self.rows.iter().zip(self.pivots.iter()) {
            let c = f.get(&out, p);
            if !f.is_zero(&c) {
                f.axpy(&mut out, &f.neg(&c), r);
            }
        }
        out
    }

    pub fn contains(&self, v: &F::Vector) -> bool {
        self.field.is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, v: &F::Vector) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| self.field.get(v, p)).collect()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn join(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut vs = self.rows.clone();
        vs.extend(other.rows.iter().cloned());
        Subspace::span(&self.field, self.ambient, vs)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        let f = &self.field;
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(f, self.ambient);
        }
        let mut cols = self.rows.clone();
        cols.extend(other.rows.iter().cloned());
        let m = Matrix::from_columns(f, self.ambient, &cols);
        let ker = m.kernel();
        let vs = ker
            .iter()
            .map(|x| {
                let mut v = f.zeros(self.ambient);
                for (i, r) in self.rows.iter().enumerate() {
                    let c = f.get(x, i);
                    f.axpy(&mut v, &c, r);
                }
                v
            })
            .collect();
        Subspace::span(f, self.ambient, vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, PrimeField, Rationals};

    fn q(m: &[&[i64]]) -> Matrix<Rationals> {
        let f = Rationals;
        Matrix::from_fn(&f, m.len(), m[0].len(), |i, j| f.from_i64(m[i][j]))
    }

    #[test]
    fn kernel_and_rank() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(Rationals.is_zero_vec(&a.apply(&ker[0])));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = q(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(&Rationals, 2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = PrimeField::new(5).unwrap();
        let a = Matrix::from_fn(&f, 2, 2, |i, j| [[1, 2], [2, 4]][i][j]);
        assert!(a.solve(&vec![1, 2]).is_some());
        assert!(a.solve(&vec![1, 0]).is_none());
    }

    #[test]
    fn subspace_meet_and_join() {
        let f = Gf2;
        let e = |i| f.unit(3, i);
        let mut v = e(0);
        f.axpy(&mut v, &1, &e(1));
        let a = Subspace::span(&f, 3, vec![e(0), e(1)]);
        let b = Subspace::span(&f, 3, vec![v.clone(), e(2)]);
        assert_eq!(a.intersect(&b).dim(), 1);
        assert!(a.intersect(&b).contains(&v));
        assert_eq!(a.join(&b).dim(), 3);
        assert_eq!(a.non_pivots(), vec![2]);
    }
}
