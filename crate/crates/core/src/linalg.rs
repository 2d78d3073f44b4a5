//! Dense exact linear algebra: row reduction, kernels, images, solving, and
//! subspaces held in canonical reduced row echelon form.
//!
//! Vectors are `Vec<F::Elem>`. Matrices act on column vectors, so a map
//! `F^n -> F^m` is an `m x n` matrix. A subspace keeps its basis as the rows
//! of an RREF matrix, which makes equality of subspaces plain equality of
//! bases.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.display(x)).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: &F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows).expect("ragged integer matrix")
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
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

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn to_scalars(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| self.field.to_scalar(x)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let base = r * other.cols;
                for c in 0..other.cols {
                    if !f.is_zero(&orow[c]) {
                        out.data[base + c] = f.mul_add(&out.data[base + c], a, &orow[c]);
                    }
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(self.mul(other))
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.mul_add(&acc, a, b))
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!(self.shape(), other.shape(), "elementwise shape mismatch");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| self.field.mul(a, s)).collect(),
        }
    }

    /// Accumulates `self += s * other`.
    pub fn add_scaled(&mut self, s: &F::Elem, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "elementwise shape mismatch");
        if self.field.is_zero(s) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = self.field.mul_add(a, s, b);
        }
    }

    /// Horizontal concatenation `[A B ...]`; all blocks share the row count.
    pub fn hstack(field: &F, rows: usize, blocks: &[&Self]) -> Self {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.paste(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks share the column count.
    pub fn vstack(field: &F, cols: usize, blocks: &[&Self]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.paste(off, 0, b);
            off += b.rows;
        }
        out
    }

    pub fn block_diag(field: &F, blocks: &[&Self]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    /// Reduced row echelon form. Pivots are chosen as the first nonzero entry
    /// scanning each column top to bottom, so the result is canonical.
    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Right null space `{x : A x = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace<F> {
        let rref = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in rref.pivots.iter().enumerate() {
                v[p] = f.neg(rref.matrix.get(r, free));
            }
            vectors.push(v);
        }
        Subspace::from_vectors(f, self.cols, vectors)
    }

    /// Column space as a subspace of `F^rows`.
    pub fn image(&self) -> Subspace<F> {
        let rref = self.rref();
        let cols: Vec<_> = rref.pivots.iter().map(|&c| self.column(c)).collect();
        Subspace::from_vectors(&self.field, self.rows, cols)
    }

    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_vectors(&self.field, self.cols, self.to_rows())
    }

    /// Solves `A x = b`, setting free variables to zero. `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let bm = Self::from_columns(&self.field, self.rows, &[b.to_vec()]);
        Ok(self.solve_matrix(&bm)?.map(|x| x.column(0)))
    }

    /// Solves `A X = B` column by column with free variables zero.
    pub fn solve_matrix(&self, b: &Self) -> Result<Option<Self>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, matrix has {}",
                b.rows, self.rows
            )));
        }
        let f = &self.field;
        let aug = Self::hstack(f, self.rows, &[self, b]);
        let rref = aug.rref();
        if rref.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (r, &p) in rref.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, rref.matrix.get(r, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self
            .solve_matrix(&Self::identity(&self.field, self.rows))
            .ok()??;
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    /// Row echelon data together with kernel and image.
    pub fn rref_kernel_image(&self) -> RrefKernelImage<F> {
        let rref = self.rref();
        RrefKernelImage {
            rank: rref.pivots.len(),
            rref: rref.matrix,
            kernel: self.kernel(),
            image: self.image(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RrefKernelImage<F: Field> {
    pub rref: Matrix<F>,
    pub rank: usize,
    pub kernel: Subspace<F>,
    pub image: Subspace<F>,
}

/// A subspace of `F^n`, stored as a full-rank RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    Contains,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combined<F: Field> {
    Space(Subspace<F>),
    Truth(bool),
}

impl<F: Field> Subspace<F> {
    /// Span of the rows of `m`.
    pub fn from_matrix(m: &Matrix<F>) -> Self {
        let rref = m.rref();
        let rank = rref.pivots.len();
        Subspace {
            ambient: m.cols(),
            basis: rref.matrix.submatrix(0, rank, 0, m.cols()),
            pivots: rref.pivots,
        }
    }

    pub fn from_vectors(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        let m = Matrix::from_rows(field, ambient, vectors).expect("vector length mismatch");
        Self::from_matrix(&m)
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }
    /// Basis vectors as the rows of an RREF matrix.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.to_rows()
    }

    /// Basis vectors as matrix columns: the inclusion map `F^dim -> F^ambient`.
    pub fn inclusion(&self) -> Matrix<F> {
        self.basis.transpose()
    }

    /// Remainder of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, b) in w.iter_mut().zip(self.basis.row(r)) {
                *x = f.sub(x, &f.mul(&c, b));
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Coordinates of `v` in the RREF basis; `None` if `v` is outside.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if self.contains_vector(v) {
            Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
        } else {
            None
        }
    }

    /// Coordinates of every column of `m`; panics if a column lies outside.
    pub fn coords_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        assert_eq!(m.rows(), self.ambient, "coords_matrix row mismatch");
        let cols: Vec<Vec<F::Elem>> = m
            .columns()
            .iter()
            .map(|c| self.coords(c).expect("column outside subspace"))
            .collect();
        Matrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// Non-pivot coordinates, which index a complement of the subspace.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Map `F^ambient -> F^ambient/self` in the coordinates of
    /// [`Subspace::free_columns`].
    pub fn quotient_projection(&self) -> Matrix<F> {
        let f = self.field();
        let free = self.free_columns();
        let n = self.ambient;
        let mut proj = Matrix::zeros(f, free.len(), n);
        for c in 0..n {
            let mut e = vec![f.zero(); n];
            e[c] = f.one();
            let red = self.reduce(&e);
            for (i, &fc) in free.iter().enumerate() {
                proj.set(i, c, red[fc].clone());
            }
        }
        proj
    }

    /// Section of [`Subspace::quotient_projection`]: standard vectors on the
    /// free columns.
    pub fn quotient_section(&self) -> Matrix<F> {
        let f = self.field();
        let free = self.free_columns();
        let mut s = Matrix::zeros(f, self.ambient, free.len());
        for (i, &fc) in free.iter().enumerate() {
            s.set(fc, i, f.one());
        }
        s
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {} differ",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let stacked = Matrix::vstack(self.field(), self.ambient, &[&self.basis, &other.basis]);
        Ok(Self::from_matrix(&stacked))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let f = self.field();
        // (a, b) with aU + bV = 0 gives aU in both spaces.
        let stacked = Matrix::vstack(f, self.ambient, &[&self.basis, &other.basis]);
        let relations = stacked.transpose().kernel();
        let du = self.dim();
        let vectors = relations
            .vectors()
            .into_iter()
            .map(|rel| {
                let a = &rel[..du];
                let mut v = vec![f.zero(); self.ambient];
                for (i, coef) in a.iter().enumerate() {
                    if f.is_zero(coef) {
                        continue;
                    }
                    for (x, b) in v.iter_mut().zip(self.basis.row(i)) {
                        *x = f.mul_add(x, coef, b);
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_vectors(f, self.ambient, vectors))
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis.to_rows().iter().all(|v| self.contains_vector(v)))
    }

    pub fn combine(&self, other: &Self, op: SubspaceOp) -> Result<Combined<F>> {
        Ok(match op {
            SubspaceOp::Sum => Combined::Space(self.sum(other)?),
            SubspaceOp::Intersect => Combined::Space(self.intersect(other)?),
            SubspaceOp::Contains => Combined::Truth(self.contains(other)?),
            SubspaceOp::Equal => {
                self.check_ambient(other)?;
                Combined::Truth(self == other)
            }
        })
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient, "map shape mismatch");
        m.mul(&self.inclusion()).image()
    }
}

/// Incrementally grown span in semi-echelon form; cheaper than rebuilding a
/// [`Subspace`] after every insertion.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        Echelon { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, b) in w.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, b));
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = &self.field;
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        let w: Vec<F::Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn to_subspace(&self) -> Subspace<F> {
        Subspace::from_vectors(&self.field, self.ambient, self.rows.clone())
    }
}

/// Coefficients `c` with `sum c_i basis_i = target`, if any.
pub fn solve_combination<F: Field>(field: &F, basis: &[Matrix<F>], target: &Matrix<F>) -> Option<Vec<F::Elem>> {
    if basis.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    let len = target.rows() * target.cols();
    let cols: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    Matrix::from_columns(field, len, &cols).solve(target.entries()).ok().flatten()
}
