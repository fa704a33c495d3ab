//! Dense exact linear algebra: reduced row echelon form, kernels, linear
//! solves and subspaces.
//!
//! Elimination order is fixed (leftmost pivot column, first nonzero row at or
//! below the current pivot row) so that every derived basis is reproducible.

use std::fmt;

use crate::field::{Field, FieldError, Scalar};

/// A row-major dense matrix over `F`.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.tag())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { field: field.clone(), rows: n, cols, data }
    }

    /// Builds a matrix from tagged scalars, rejecting entries from another field.
    pub fn from_scalar_rows(field: &F, rows: &[Vec<Scalar>]) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            out.push(row.iter().map(|s| field.from_scalar(s)).collect::<Result<Vec<_>, _>>()?);
        }
        Ok(Self::from_rows(field, cols, out))
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, cols, rows)
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

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !f.is_zero(b) {
                        f.add_mul_assign(&mut out.data[r * other.cols + c], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    f.add_mul_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.extend(other.row(r).iter().cloned());
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols, data }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// True for square matrices of full rank.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Copies a block into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }
}

/// Subtracts `factor * src` from `dst`, starting at column `from`.
fn row_sub_scaled<F: Field>(f: &F, dst: &mut [F::Elem], src: &[F::Elem], factor: &F::Elem, from: usize) {
    for j in from..dst.len() {
        if !f.is_zero(&src[j]) {
            f.sub_mul_assign(&mut dst[j], factor, &src[j]);
        }
    }
}

fn rref_in_place<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let f = m.field.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr >= rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        if found != pr {
            for c in 0..cols {
                m.data.swap(found * cols + c, pr * cols + c);
            }
        }
        let inv = f.inv(m.get(pr, col)).expect("pivot is nonzero");
        for c in col..cols {
            let v = f.mul(m.get(pr, c), &inv);
            m.set(pr, c, v);
        }
        let pivot_row: Vec<F::Elem> = m.row(pr).to_vec();
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = m.get(r, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            let dst = &mut m.data[r * cols..(r + 1) * cols];
            row_sub_scaled(&f, dst, &pivot_row, &factor, col);
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut out = m.clone();
    let pivots = rref_in_place(&mut out);
    (out, pivots)
}

/// Basis of `{x : m x = 0}`.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let f = m.field();
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols()];
        v[free] = f.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(row, free));
        }
        vectors.push(v);
    }
    Subspace::from_vectors(f, m.cols(), vectors)
}

/// Some `x` with `a x = b`, free variables set to zero; `None` if inconsistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let f = a.field();
    let column = Matrix::from_rows(f, 1, b.iter().map(|x| vec![x.clone()]).collect());
    let aug = a.hstack(&column);
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, a.cols()).clone();
    }
    Some(x)
}

/// A subspace of `F^ambient`, stored as a basis in reduced row echelon form.
#[derive(Clone, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}, pivots {:?})", self.dim(), self.ambient, self.pivots)
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let id = Matrix::identity(field, ambient);
        Subspace { field: field.clone(), ambient, rows: id.row_vectors(), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors<I>(field: &F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut builder = EchelonBuilder::new(field, ambient);
        for v in vectors {
            builder.insert(v);
        }
        builder.into_subspace()
    }

    pub fn row_space(m: &Matrix<F>) -> Self {
        Self::from_vectors(m.field(), m.cols(), m.row_vectors())
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
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(&self.field, self.ambient, self.rows.clone())
    }

    /// Coordinates not used as pivots; unit vectors on them span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Canonical residue of `v` modulo the subspace: zero on every pivot.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let factor = out[p].clone();
            row_sub_scaled(f, &mut out, row, &factor, p);
        }
        out
    }

    /// Coefficients of `v` over the basis rows, or `None` if `v` is outside.
    pub fn membership(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        if self.reduce(v).iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Linear combination of basis rows.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coeffs.len(), self.dim());
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                f.add_mul_assign(o, c, x);
            }
        }
        out
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        Self::from_vectors(&self.field, self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        // Solve sum a_i r_i = sum b_j s_j; image of the a-part.
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, self.ambient);
        }
        let (k, l) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(f, self.ambient, k + l);
        for (i, row) in self.rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.set(c, i, x.clone());
            }
        }
        for (j, row) in other.rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.set(c, k + j, f.neg(x));
            }
        }
        let ker = kernel_basis(&m);
        let vecs = ker.basis().iter().map(|v| self.combine(&v[..k])).collect::<Vec<_>>();
        Self::from_vectors(f, self.ambient, vecs)
    }
}

/// Incremental row reduction: rows are kept fully reduced against each other.
#[derive(Clone)]
pub struct EchelonBuilder<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        EchelonBuilder { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_subspace(s: &Subspace<F>) -> Self {
        EchelonBuilder { field: s.field.clone(), ambient: s.ambient, rows: s.rows.clone(), pivots: s.pivots.clone() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let factor = out[p].clone();
            row_sub_scaled(f, &mut out, row, &factor, 0);
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns `true` when it was independent.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field.clone();
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        for row in &mut self.rows {
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            row_sub_scaled(&f, row, &v, &factor, p);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn into_subspace(self) -> Subspace<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows_opt: Vec<Option<Vec<F::Elem>>> = self.rows.into_iter().map(Some).collect();
        let rows = order.iter().map(|&i| rows_opt[i].take().expect("each row once")).collect();
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        Subspace { field: self.field, ambient: self.ambient, rows, pivots }
    }
}
